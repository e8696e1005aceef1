#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "kqmc/fourier.hpp"
#include "kqmc/korobov.hpp"
#include "kqmc/primes.hpp"

namespace kqmc {

/// Q(f) = sum_h w_h f(x_h).
struct LinearAlgorithm {
  std::vector<RationalPoint> nodes;
  std::vector<double> weights;

  /// Equal weights 1/n.
  [[nodiscard]] static LinearAlgorithm qmc(std::vector<RationalPoint> nodes);

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] int dim() const;
  /// Throws DomainError unless lengths match and all nodes share one dimension.
  void validate() const;
};

[[nodiscard]] Complex apply(const LinearAlgorithm& alg, const SpectralFunction& f);

/// Black-box integrand; receives coordinates converted once from the exact
/// numerators.
using Integrand = std::function<double(std::span<const double>)>;

/// (1/n) sum over all union points. Throws DataError on a non-finite sample.
[[nodiscard]] double qmc_apply(const Integrand& f, const UnionPointSet& uset);
/// Exact-phase evaluation of every term.
[[nodiscard]] Complex qmc_apply(const SpectralFunction& f, const UnionPointSet& uset);

/// |sum_{k != 0} c_k expsum_union(k)|, computed in frequency space.
[[nodiscard]] double exact_error(const SpectralFunction& f, const UnionPointSet& uset);
/// |integral(f) - qmc_apply(f)|, computed by sampling.
[[nodiscard]] double sampling_error(const SpectralFunction& f, const UnionPointSet& uset);

/// Worst-case error bound 16/(c_P m) over the unit ball of F2, valid for every
/// dimension d <= d_max (least window prime > d).
struct ErrorCertificate {
  std::int64_t m = 0;
  double c_p = 0.0;
  double bound = 0.0;
  std::int64_t d_max = 0;
  std::int64_t n = 0;
};

/// Throws PreconditionError naming the smallest admissible m when the least
/// window prime does not exceed d.
[[nodiscard]] ErrorCertificate wc_bound(std::int64_t m, const DensityConstants& consts,
                                        std::int64_t d);

struct BudgetPlan {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t m_accuracy = 0;   // ceil(16 / (c_P eps))
  std::int64_t m_dimension = 0;  // min_admissible_m(d)
  double bound = 0.0;            // 16 / (c_P m)
};

/// m = max(ceil(16/(c_P eps)), min_admissible_m(d)), n = sum of p^2 over the
/// window. Throws DomainError unless 0 < eps < 1 and d >= 1.
[[nodiscard]] BudgetPlan plan(double eps, std::int64_t d, const DensityConstants& consts);

/// Node files: one point per line, whitespace-separated coordinates written as
/// rationals "a/b" or decimals in [0,1) (decimals become numerator / 2^40).
/// The Korobov export format (header with denom=) is accepted as well. Lines
/// starting with '#' that carry no denom= field are comments. Throws DataError.
[[nodiscard]] std::vector<RationalPoint> read_nodes(std::istream& in);
/// One weight per line (or whitespace separated). Throws DataError.
[[nodiscard]] std::vector<double> read_weights(std::istream& in);
void write_nodes(std::ostream& out, std::span<const RationalPoint> nodes);

}  // namespace kqmc
