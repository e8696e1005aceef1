#pragma once

#include <cstdint>
#include <string>

#include "kqmc/fourier.hpp"
#include "kqmc/korobov.hpp"
#include "kqmc/primes.hpp"

namespace kqmc {

enum class SumKind { S, T, P1, P2 };

[[nodiscard]] std::string_view to_string(SumKind kind);

/// Normalized exponential sum (1/N) sum_x exp(2 pi i k.x) over a point set.
struct ExpSumResult {
  Complex value;
  std::int64_t n_terms = 0;
  SumKind set_kind = SumKind::S;
  std::int64_t p_or_m = 0;
};

/// lhs <= rhs check with fixed 1e-12 slack; `slack` is rhs - lhs.
struct BoundReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double slack = 0.0;
};

inline constexpr double kBoundSlack = 1e-12;

[[nodiscard]] BoundReport make_report(std::string label, double lhs, double rhs,
                                      double tolerance = kBoundSlack);

/// Phases are reduced exactly to (integer mod denom)/denom and summed with
/// compensation in canonical point order.
[[nodiscard]] ExpSumResult expsum_single(const Frequency& k, const KorobovSet& set);
[[nodiscard]] ExpSumResult expsum_union(const Frequency& k, const UnionPointSet& uset);

/// True when p divides every entry of k (including k = 0).
[[nodiscard]] bool divides_all(std::int64_t p, const Frequency& k);

/// Number of h0 in [0, p) with sum_{j in supp k} k_j j h0^(j-1) = 0 (mod p).
/// Throws DomainError for k = 0.
[[nodiscard]] std::int64_t root_count(const Frequency& k, std::int64_t p);

/// (1/p) sum over the congruence roots h0 of exp(2 pi i (sum_j k_j h0^j mod p^2)/p^2):
/// the reduced form of the S-type sum after summing out the high digit h1.
[[nodiscard]] Complex root_phase_sum(const Frequency& k, std::int64_t p);

/// |S-type sum - root_phase_sum| against 1e-10. Requires k != 0, p > d.
[[nodiscard]] BoundReport decomposition_check(const Frequency& k, std::int64_t p);

/// width(supp k)/p. Throws PreconditionError when k = 0, p | k or p <= d;
/// only the trivial bound 1 applies when p | k.
[[nodiscard]] double lemma_bound(const Frequency& k, std::int64_t p);

/// Count of window primes dividing k_j for every j in supp(k). Throws
/// DomainError for k = 0.
[[nodiscard]] std::int64_t divisor_count(const Frequency& k, const PrimeWindow& window);

/// (2 / log m) min_{j in supp k} log|k_j|.
[[nodiscard]] double divisor_count_bound(const Frequency& k, std::int64_t m);

/// (4 width(supp k) + (8/c_P) min log|k_j|) / m. Throws PreconditionError
/// for k = 0 or when the least window prime does not exceed d.
[[nodiscard]] double corollary_bound(const Frequency& k, std::int64_t m,
                                     const DensityConstants& consts);

}  // namespace kqmc
