#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kqmc {

/// The prime window {p prime : ceil(m/2) < p <= m}. Because every p in the
/// window satisfies 2p > m, distinct window primes never divide one another
/// and p^2 sets over the window never coincide.
struct PrimeWindow {
  std::int64_t m = 2;
  std::vector<std::int64_t> primes;  // strictly increasing

  [[nodiscard]] std::size_t size() const { return primes.size(); }
  [[nodiscard]] std::int64_t min_prime() const { return primes.front(); }
  [[nodiscard]] std::int64_t max_prime() const { return primes.back(); }
  /// Sum of p^2 over the window: the size of either union point set.
  [[nodiscard]] std::int64_t total_points() const;
};

/// Empirical constants of the prime-window density estimate
///   c_P m / log m <= |P_m| <= C_P m / log m,  2 <= m <= calibrated_up_to.
struct DensityConstants {
  double c_p = 0.0;
  double C_p = 0.0;
  std::int64_t calibrated_up_to = 0;
};

/// Shipped defaults: calibrate_constants(100000) rounded outward to three
/// decimals.
inline constexpr DensityConstants kDefaultDensity{0.230, 0.620, 100000};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
[[nodiscard]] bool is_prime(std::uint64_t n);

/// Primes in the closed interval [lo, hi], ascending. Uses a flat sieve for
/// hi <= 1e7 and a segmented sieve above.
[[nodiscard]] std::vector<std::int64_t> primes_in_range(std::int64_t lo,
                                                        std::int64_t hi);

/// Throws DomainError for m < 2.
[[nodiscard]] PrimeWindow enumerate_window(std::int64_t m);

/// |P_m| log(m) / m. Throws DomainError for m < 2.
[[nodiscard]] double density_ratio(std::int64_t m);

/// Sweeps 2 <= m <= m_max; c_P is the minimum ratio rounded down and C_P the
/// maximum rounded up, both to three decimals.
[[nodiscard]] DensityConstants calibrate_constants(std::int64_t m_max);

/// Checks both density inequalities for every 2 <= m <= up_to; returns the
/// first violating m, or 0 when none.
[[nodiscard]] std::int64_t first_density_violation(const DensityConstants& c,
                                                   std::int64_t up_to);

/// Smallest m >= 2 whose window's least prime exceeds d.
[[nodiscard]] std::int64_t min_admissible_m(std::int64_t d);

}  // namespace kqmc
