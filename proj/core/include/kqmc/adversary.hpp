#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kqmc/expsum.hpp"
#include "kqmc/fourier.hpp"
#include "kqmc/integrator.hpp"

namespace kqmc {

/// A = {0} u {k e_j : 1 <= j <= d, 1 <= k <= ceil(n/d)}, in that order
/// (zero first, then axis by axis). |A| = 1 + d ceil(n/d) > n.
struct FoolingIndexSet {
  int d = 1;
  std::int64_t n = 1;
  std::vector<Frequency> frequencies;

  [[nodiscard]] std::size_t size() const { return frequencies.size(); }
  [[nodiscard]] std::int64_t per_axis() const { return (n + d - 1) / d; }
};

/// Throws DomainError unless n >= 1 and d >= 1.
[[nodiscard]] FoolingIndexSet build_index_set(std::int64_t n, int d);

using ComplexVector = std::vector<Complex>;

/// Nonzero c with sum_k c_k exp(2 pi i k.x_h) = 0 at every node, by reduced
/// row echelon elimination with scaled partial pivoting; the first free column
/// is set to 1 and the others to 0. Throws DomainError when |A| <= #nodes or
/// dimensions disagree, DataError on non-finite entries.
[[nodiscard]] ComplexVector nullspace_vector(std::span<const RationalPoint> nodes,
                                             const FoolingIndexSet& index_set);

/// |sum_k c_k exp(2 pi i k.x_h)| for every node h.
[[nodiscard]] std::vector<double> nullspace_residuals(std::span<const RationalPoint> nodes,
                                                      const FoolingIndexSet& index_set,
                                                      const ComplexVector& c);

/// max(1, min_{j in supp(k)} log|k_j - l_j|), with log 0 = -inf. This is the
/// weight the normalizing constant uses; note the support is that of k, not
/// of the shifted frequency k - l.
[[nodiscard]] double shifted_weight(const Frequency& k, const Frequency& l);

/// sum_{k in A} shifted_weight(k, l).
[[nodiscard]] double counting_sum(const FoolingIndexSet& index_set, const Frequency& l);

/// max over l in A of counting_sum; the fooling constant C is its inverse.
[[nodiscard]] double counting_max(const FoolingIndexSet& index_set);

/// g*(x) = Re(C sum_k c_k exp(2 pi i (k - l).x)) as a real spectral function.
[[nodiscard]] SpectralFunction build_g_star(const FoolingIndexSet& index_set,
                                            const ComplexVector& coeffs, std::size_t pivot_index,
                                            double C);

struct FoolingCertificate {
  int d = 1;
  std::int64_t n = 0;
  FoolingIndexSet index_set;
  ComplexVector coeffs;  // normalized: |c_k| <= 1, c_pivot = 1
  std::size_t pivot_index = 0;
  Frequency pivot;
  double C = 0.0;
  SpectralFunction g_star;
  double residual_max = 0.0;  // max_h |g*(x_h)|
  double norm_f1 = 0.0;       // at the true shifted frequencies
  Complex qmc_value;          // Q(g*)
  double integral = 0.0;      // I(g*) = C
  bool guaranteed_bound = false;  // n > 2d
  double lower_bound = 0.0;       // d / (2 n^2)
};

/// Builds the fooling function for the algorithm's nodes (weights are not
/// used). Always constructs; guaranteed_bound is false when n <= 2d.
[[nodiscard]] FoolingCertificate fooling_certificate(const LinearAlgorithm& alg, int d);

inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kNormTolerance = 1e-9;

struct VerificationReport {
  std::vector<BoundReport> checks;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::string failures() const;
};

/// Independent re-check: rebuilds g* from (coeffs, pivot, C), re-evaluates it
/// at every node and recomputes the norm, integral and the constant C.
[[nodiscard]] VerificationReport verify_certificate(const FoolingCertificate& cert,
                                                    const LinearAlgorithm& alg);

[[nodiscard]] std::string to_json(const FoolingCertificate& cert);
/// Throws DataError on malformed input.
[[nodiscard]] FoolingCertificate certificate_from_json(std::string_view text);

}  // namespace kqmc
