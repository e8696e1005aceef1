#include "kqmc/expsum.hpp"

#include <cmath>

#include "kqmc/errors.hpp"
#include "kqmc/modular.hpp"
#include "kqmc/summation.hpp"

namespace kqmc {
namespace {

void require_dims(const Frequency& k, int d) {
  if (k.dim() != d) {
    throw DomainError("frequency dimension " + std::to_string(k.dim()) +
                      " does not match point set dimension " + std::to_string(d));
  }
}

void require_nonzero(const Frequency& k) {
  if (k.is_zero()) throw DomainError("operation requires k != 0");
}

SumKind single_kind(SetKind kind) { return kind == SetKind::S ? SumKind::S : SumKind::T; }

// sum_{j in supp k} k_j j h0^(j-1) mod p, exponents 1-based.
std::int64_t derivative_residue(const Frequency& k, std::int64_t p, std::int64_t h0) {
  const auto mod = static_cast<std::uint64_t>(p);
  std::uint64_t acc = 0;
  for (const auto& [index, value] : k.entries()) {
    const auto j = static_cast<std::uint64_t>(index) + 1;
    const auto coef = static_cast<std::uint64_t>(mod_floor(static_cast<int128>(value) * static_cast<int128>(j), p));
    acc = (acc + mulmod(coef, powmod(static_cast<std::uint64_t>(h0), j - 1, mod), mod)) % mod;
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace

std::string_view to_string(SumKind kind) {
  switch (kind) {
    case SumKind::S: return "S";
    case SumKind::T: return "T";
    case SumKind::P1: return "P1";
    case SumKind::P2: return "P2";
  }
  return "?";
}

BoundReport make_report(std::string label, double lhs, double rhs, double tolerance) {
  return BoundReport{std::move(label), lhs, rhs, lhs <= rhs + tolerance, rhs - lhs};
}

ExpSumResult expsum_single(const Frequency& k, const KorobovSet& set) {
  require_dims(k, set.dim());
  const std::int64_t denom = set.denominator();
  CompensatedComplexSum sum;
  set.for_each_point([&](std::int64_t, std::span<const std::int64_t> num) {
    sum.add(unit_phase(phase_numerator(k, num, denom), denom));
  });
  return ExpSumResult{sum.value() / static_cast<double>(set.size()), set.size(),
                      single_kind(set.kind()), set.p()};
}

ExpSumResult expsum_union(const Frequency& k, const UnionPointSet& uset) {
  require_dims(k, uset.d);
  CompensatedComplexSum sum;
  uset.for_each_point([&](const KorobovSet& set, std::int64_t, std::span<const std::int64_t> num) {
    sum.add(unit_phase(phase_numerator(k, num, set.denominator()), set.denominator()));
  });
  const std::int64_t n = uset.size();
  return ExpSumResult{sum.value() / static_cast<double>(n), n,
                      uset.kind == SetKind::S ? SumKind::P1 : SumKind::P2, uset.m};
}

bool divides_all(std::int64_t p, const Frequency& k) {
  for (const auto& entry : k.entries()) {
    if (entry.second % p != 0) return false;
  }
  return true;
}

std::int64_t root_count(const Frequency& k, std::int64_t p) {
  require_nonzero(k);
  std::int64_t roots = 0;
  for (std::int64_t h0 = 0; h0 < p; ++h0) {
    if (derivative_residue(k, p, h0) == 0) ++roots;
  }
  return roots;
}

Complex root_phase_sum(const Frequency& k, std::int64_t p) {
  require_nonzero(k);
  const std::int64_t p2 = p * p;
  const auto mod = static_cast<std::uint64_t>(p2);
  CompensatedComplexSum sum;
  for (std::int64_t h0 = 0; h0 < p; ++h0) {
    if (derivative_residue(k, p, h0) != 0) continue;
    std::uint64_t phase = 0;
    for (const auto& [index, value] : k.entries()) {
      const auto j = static_cast<std::uint64_t>(index) + 1;
      const auto coef = static_cast<std::uint64_t>(mod_floor(value, p2));
      phase = (phase + mulmod(coef, powmod(static_cast<std::uint64_t>(h0), j, mod), mod)) % mod;
    }
    sum.add(unit_phase(static_cast<std::int64_t>(phase), p2));
  }
  return sum.value() / static_cast<double>(p);
}

BoundReport decomposition_check(const Frequency& k, std::int64_t p) {
  require_nonzero(k);
  if (p <= k.dim()) {
    throw PreconditionError("decomposition check requires p > d");
  }
  const auto direct = expsum_single(k, s_set(p, k.dim()));
  const Complex reduced = root_phase_sum(k, p);
  return make_report("decomposition k=" + k.to_string() + " p=" + std::to_string(p),
                     std::abs(direct.value - reduced), 1e-10, 0.0);
}

double lemma_bound(const Frequency& k, std::int64_t p) {
  require_nonzero(k);
  if (p <= k.dim()) {
    throw PreconditionError("bound width/p needs p > d (p=" + std::to_string(p) +
                            ", d=" + std::to_string(k.dim()) + "); result unverified");
  }
  if (divides_all(p, k)) {
    throw PreconditionError("p=" + std::to_string(p) + " divides k=" + k.to_string() +
                            "; only the trivial bound 1 applies");
  }
  return static_cast<double>(width(k)) / static_cast<double>(p);
}

std::int64_t divisor_count(const Frequency& k, const PrimeWindow& window) {
  require_nonzero(k);
  std::int64_t count = 0;
  for (const auto p : window.primes) {
    if (divides_all(p, k)) ++count;
  }
  return count;
}

double divisor_count_bound(const Frequency& k, std::int64_t m) {
  require_nonzero(k);
  return 2.0 / std::log(static_cast<double>(m)) * min_log_abs(k);
}

double corollary_bound(const Frequency& k, std::int64_t m, const DensityConstants& consts) {
  if (k.is_zero()) throw PreconditionError("corollary bound requires k != 0");
  const auto window = enumerate_window(m);
  if (window.min_prime() <= k.dim()) {
    throw PreconditionError("corollary bound requires least window prime > d (m=" +
                            std::to_string(m) + ", least prime " +
                            std::to_string(window.min_prime()) + ", d=" +
                            std::to_string(k.dim()) + ")");
  }
  return (4.0 * width(k) + 8.0 / consts.c_p * min_log_abs(k)) / static_cast<double>(m);
}

}  // namespace kqmc
