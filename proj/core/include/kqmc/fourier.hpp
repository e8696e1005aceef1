#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kqmc/korobov.hpp"

namespace kqmc {

using Complex = std::complex<double>;

/// Integer frequency vector k in Z^d, stored sparsely as (index, value) pairs
/// with strictly ascending 0-based index and nonzero value. This encoding is
/// canonical, so the defaulted ordering makes Frequency usable as a map key.
class Frequency {
 public:
  using Entry = std::pair<int, std::int64_t>;

  Frequency() = default;
  explicit Frequency(int d) : d_(d) {}

  [[nodiscard]] static Frequency from_dense(std::span<const std::int64_t> k);
  [[nodiscard]] static Frequency from_dense(std::initializer_list<std::int64_t> k) {
    return from_dense(std::span<const std::int64_t>(k.begin(), k.size()));
  }
  /// Zero values are dropped. Throws DomainError on out-of-range or repeated
  /// indices.
  [[nodiscard]] static Frequency from_pairs(int d, std::vector<Entry> pairs);
  /// value * e_axis.
  [[nodiscard]] static Frequency axis(int d, int axis, std::int64_t value);

  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] std::int64_t operator[](int j) const;
  [[nodiscard]] std::vector<std::int64_t> dense() const;
  /// 1-based coordinate indices of the nonzero entries.
  [[nodiscard]] std::vector<int> support() const;
  [[nodiscard]] std::size_t support_size() const { return entries_.size(); }
  /// Permute coordinates: result[j] = (*this)[perm[j]].
  [[nodiscard]] Frequency permuted(std::span<const int> perm) const;
  [[nodiscard]] Frequency reversed() const;
  [[nodiscard]] std::string to_string() const;

  friend Frequency operator-(const Frequency& k);
  friend Frequency operator+(const Frequency& a, const Frequency& b);
  friend Frequency operator-(const Frequency& a, const Frequency& b);

  friend auto operator<=>(const Frequency&, const Frequency&) = default;
  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  int d_ = 0;
  std::vector<Entry> entries_;
};

/// max(u) - min(u) + 1 for nonempty u, and 1 for the empty set.
[[nodiscard]] int width(std::span<const int> u);
[[nodiscard]] int width(const Frequency& k);

/// min over the support of log|k_j| (natural log); -inf for k = 0.
[[nodiscard]] double min_log_abs(const Frequency& k);

/// F1: max(1, min log|k_j|), F2: max(width(supp k), ...), F3: max(|supp k|, ...).
/// For k = 0 the minimum is absent and every scheme gives 1.
enum class WeightScheme { F1, F2, F3 };

[[nodiscard]] std::string_view to_string(WeightScheme scheme);
[[nodiscard]] WeightScheme weight_scheme_from_string(std::string_view text);

[[nodiscard]] double weight(const Frequency& k, WeightScheme scheme);

/// Finite Fourier series f(x) = sum_k c_k exp(2 pi i k.x). Immutable after
/// construction; exact zero coefficients are never stored. When real_valued
/// the coefficient map is Hermitian: c_{-k} = conj(c_k), c_0 real.
class SpectralFunction {
 public:
  using CoeffMap = std::map<Frequency, Complex>;

  SpectralFunction() = default;
  /// Terms with equal frequency are summed. Throws DomainError on dimension
  /// mismatch or, when real_valued, on a non-Hermitian map.
  SpectralFunction(int d, std::vector<std::pair<Frequency, Complex>> terms, bool real_valued);

  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] bool real_valued() const { return real_; }
  [[nodiscard]] const CoeffMap& coeffs() const { return coeffs_; }
  [[nodiscard]] Complex coeff(const Frequency& k) const;
  [[nodiscard]] bool empty() const { return coeffs_.empty(); }

  /// Same function with coordinates permuted (see Frequency::permuted).
  [[nodiscard]] SpectralFunction permuted(std::span<const int> perm) const;

 private:
  int d_ = 0;
  bool real_ = false;
  CoeffMap coeffs_;
};

/// Sum over stored k of |c_k| weight(k, scheme).
[[nodiscard]] double norm(const SpectralFunction& f, WeightScheme scheme);

/// exp(2 pi i numerator / denominator), with the numerator already reduced.
[[nodiscard]] Complex unit_phase(std::int64_t numerator, std::int64_t denominator);

/// (k . numerators) mod denominator in exact integer arithmetic.
[[nodiscard]] std::int64_t phase_numerator(const Frequency& k,
                                           std::span<const std::int64_t> numerators,
                                           std::int64_t denominator);

/// Exact-phase evaluation at a rational point. Throws DomainError when the
/// dimensions differ.
[[nodiscard]] Complex evaluate(const SpectralFunction& f, const RationalPoint& x);
[[nodiscard]] Complex evaluate(const SpectralFunction& f, std::span<const std::int64_t> numerators,
                               std::int64_t denominator);
/// Floating-point evaluation at an arbitrary point.
[[nodiscard]] Complex evaluate(const SpectralFunction& f, std::span<const double> x);

/// The integral over [0,1)^d, i.e. the zero coefficient.
[[nodiscard]] Complex integral(const SpectralFunction& f);

/// Real-valued random test function: `support_budget` Hermitian pairs
/// (k, -k) with k != 0 and entries in [-max_abs_freq, max_abs_freq], scaled
/// so that norm(f, scheme) = 1. Deterministic in seed.
[[nodiscard]] SpectralFunction random_function(std::uint64_t seed, int d, int support_budget,
                                               std::int64_t max_abs_freq, WeightScheme scheme);

// JSON: {"d":..,"real":..,"coeffs":[{"k":[[index,value],...],"re":..,"im":..}]}
// with 0-based coordinate indices.
[[nodiscard]] std::string to_json(const SpectralFunction& f);
/// Throws DataError on malformed input.
[[nodiscard]] SpectralFunction spectral_function_from_json(std::string_view text);

}  // namespace kqmc
