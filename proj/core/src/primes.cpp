#include "kqmc/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "kqmc/errors.hpp"
#include "kqmc/modular.hpp"

namespace kqmc {
namespace {

constexpr std::int64_t kFlatSieveLimit = 10'000'000;

void require_window_arg(std::int64_t m) {
  if (m < 2) {
    throw DomainError("prime window needs m >= 2, got " + std::to_string(m));
  }
}

// composite[i] for 0 <= i <= n.
std::vector<bool> composite_table(std::int64_t n) {
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  composite[0] = true;
  if (n >= 1) composite[1] = true;
  for (std::int64_t i = 2; i * i <= n; ++i) {
    if (composite[i]) continue;
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return composite;
}

std::vector<std::int64_t> segmented(std::int64_t lo, std::int64_t hi) {
  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  const auto base = primes_in_range(2, root);
  std::vector<std::int64_t> out;
  constexpr std::int64_t kSegment = 1 << 20;
  for (std::int64_t start = lo; start <= hi; start += kSegment) {
    const std::int64_t stop = std::min(hi, start + kSegment - 1);
    std::vector<bool> composite(static_cast<std::size_t>(stop - start + 1), false);
    for (const std::int64_t p : base) {
      if (p * p > stop) break;
      std::int64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::int64_t j = first; j <= stop; j += p) composite[j - start] = true;
    }
    for (std::int64_t v = start; v <= stop; ++v) {
      if (v >= 2 && !composite[v - start]) out.push_back(v);
    }
  }
  return out;
}

// pi_prefix[i] = number of primes <= i.
std::vector<std::int64_t> prime_counts(std::int64_t n) {
  const auto composite = composite_table(n);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 1; i <= n; ++i) counts[i] = counts[i - 1] + (composite[i] ? 0 : 1);
  return counts;
}

std::int64_t window_count(const std::vector<std::int64_t>& pi, std::int64_t m) {
  return pi[m] - pi[(m + 1) / 2];
}

}  // namespace

std::int64_t PrimeWindow::total_points() const {
  std::int64_t n = 0;
  for (const auto p : primes) n += p * p;
  return n;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t small : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t odd = n - 1;
  int twos = 0;
  while ((odd & 1U) == 0) {
    odd >>= 1U;
    ++twos;
  }
  constexpr std::array<std::uint64_t, 7> kBases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (const std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a % n, odd, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < twos; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 2);
  if (hi < lo) return {};
  if (hi > kFlatSieveLimit) return segmented(lo, hi);
  const auto composite = composite_table(hi);
  std::vector<std::int64_t> out;
  for (std::int64_t v = lo; v <= hi; ++v) {
    if (!composite[v]) out.push_back(v);
  }
  return out;
}

PrimeWindow enumerate_window(std::int64_t m) {
  require_window_arg(m);
  return PrimeWindow{m, primes_in_range((m + 1) / 2 + 1, m)};
}

double density_ratio(std::int64_t m) {
  require_window_arg(m);
  const auto count = static_cast<double>(enumerate_window(m).size());
  return count * std::log(static_cast<double>(m)) / static_cast<double>(m);
}

DensityConstants calibrate_constants(std::int64_t m_max) {
  require_window_arg(m_max);
  const auto pi = prime_counts(m_max);
  double lo = 1e300;
  double hi = 0.0;
  for (std::int64_t m = 2; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double ratio = static_cast<double>(window_count(pi, m)) * std::log(md) / md;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  DensityConstants c;
  c.c_p = std::floor(lo * 1000.0) / 1000.0;
  c.C_p = std::ceil(hi * 1000.0) / 1000.0;
  c.calibrated_up_to = m_max;
  return c;
}

std::int64_t first_density_violation(const DensityConstants& c, std::int64_t up_to) {
  if (up_to < 2) return 0;
  const auto pi = prime_counts(up_to);
  for (std::int64_t m = 2; m <= up_to; ++m) {
    const double md = static_cast<double>(m);
    const double scale = md / std::log(md);
    const auto count = static_cast<double>(window_count(pi, m));
    if (c.c_p * scale > count || count > c.C_p * scale) return m;
  }
  return 0;
}

std::int64_t min_admissible_m(std::int64_t d) {
  // The least window prime is the least prime above ceil(m/2); once
  // ceil(m/2) >= d it exceeds d, so m <= 2d + 2 always suffices.
  const std::int64_t limit = 2 * std::max<std::int64_t>(d, 1) + 2;
  const auto primes = primes_in_range(2, limit);
  for (std::int64_t m = 2; m <= limit; ++m) {
    const auto it = std::upper_bound(primes.begin(), primes.end(), (m + 1) / 2);
    if (it != primes.end() && *it <= m && *it > d) return m;
  }
  return limit;
}

}  // namespace kqmc
