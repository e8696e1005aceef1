#include "kqmc/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kqmc/errors.hpp"
#include "kqmc/modular.hpp"

namespace kqmc {

// ---------------------------------------------------------------- Frequency

Frequency Frequency::from_dense(std::span<const std::int64_t> k) {
  Frequency f(static_cast<int>(k.size()));
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] != 0) f.entries_.emplace_back(static_cast<int>(j), k[j]);
  }
  return f;
}

Frequency Frequency::from_pairs(int d, std::vector<Entry> pairs) {
  std::sort(pairs.begin(), pairs.end());
  Frequency f(d);
  for (const auto& [index, value] : pairs) {
    if (index < 0 || index >= d) {
      throw DomainError("frequency index " + std::to_string(index) + " outside [0, " +
                        std::to_string(d) + ")");
    }
    if (!f.entries_.empty() && f.entries_.back().first == index) {
      throw DomainError("repeated frequency index " + std::to_string(index));
    }
    if (value != 0) f.entries_.emplace_back(index, value);
  }
  return f;
}

Frequency Frequency::axis(int d, int axis, std::int64_t value) {
  return from_pairs(d, {{axis, value}});
}

std::int64_t Frequency::operator[](int j) const {
  for (const auto& [index, value] : entries_) {
    if (index == j) return value;
  }
  return 0;
}

std::vector<std::int64_t> Frequency::dense() const {
  std::vector<std::int64_t> k(static_cast<std::size_t>(d_), 0);
  for (const auto& [index, value] : entries_) k[static_cast<std::size_t>(index)] = value;
  return k;
}

std::vector<int> Frequency::support() const {
  std::vector<int> u;
  u.reserve(entries_.size());
  for (const auto& entry : entries_) u.push_back(entry.first + 1);
  return u;
}

Frequency Frequency::permuted(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(d_)) throw DomainError("permutation size mismatch");
  const auto k = dense();
  std::vector<std::int64_t> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) out[j] = k.at(static_cast<std::size_t>(perm[j]));
  return from_dense(out);
}

Frequency Frequency::reversed() const {
  std::vector<int> perm(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) perm[static_cast<std::size_t>(j)] = d_ - 1 - j;
  return permuted(perm);
}

std::string Frequency::to_string() const {
  std::ostringstream out;
  out << '(';
  const auto k = dense();
  for (std::size_t j = 0; j < k.size(); ++j) out << (j ? "," : "") << k[j];
  out << ')';
  return out.str();
}

Frequency operator-(const Frequency& k) {
  Frequency out = k;
  for (auto& entry : out.entries_) entry.second = -entry.second;
  return out;
}

Frequency operator+(const Frequency& a, const Frequency& b) {
  if (a.d_ != b.d_) throw DomainError("frequency dimension mismatch");
  auto k = a.dense();
  for (const auto& [index, value] : b.entries_) k[static_cast<std::size_t>(index)] += value;
  return Frequency::from_dense(k);
}

Frequency operator-(const Frequency& a, const Frequency& b) { return a + (-b); }

// ---------------------------------------------------------------- weights

int width(std::span<const int> u) {
  if (u.empty()) return 1;
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  return *hi - *lo + 1;
}

int width(const Frequency& k) {
  if (k.is_zero()) return 1;
  return k.entries().back().first - k.entries().front().first + 1;
}

double min_log_abs(const Frequency& k) {
  if (k.is_zero()) return -std::numeric_limits<double>::infinity();
  std::uint64_t smallest = std::numeric_limits<std::uint64_t>::max();
  for (const auto& entry : k.entries()) {
    const auto v = entry.second;
    const auto a = v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    smallest = std::min(smallest, a);
  }
  return std::log(static_cast<double>(smallest));
}

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::F1: return "f1";
    case WeightScheme::F2: return "f2";
    case WeightScheme::F3: return "f3";
  }
  return "?";
}

WeightScheme weight_scheme_from_string(std::string_view text) {
  if (text == "f1" || text == "F1") return WeightScheme::F1;
  if (text == "f2" || text == "F2") return WeightScheme::F2;
  if (text == "f3" || text == "F3") return WeightScheme::F3;
  throw DomainError("unknown weight scheme '" + std::string(text) + "'");
}

double weight(const Frequency& k, WeightScheme scheme) {
  if (k.is_zero()) return 1.0;
  double first = 1.0;
  switch (scheme) {
    case WeightScheme::F1: first = 1.0; break;
    case WeightScheme::F2: first = width(k); break;
    case WeightScheme::F3: first = static_cast<double>(k.support_size()); break;
  }
  return std::max(first, min_log_abs(k));
}

// ---------------------------------------------------------------- SpectralFunction

namespace {

constexpr double kHermitianTolerance = 1e-14;

bool close(Complex a, Complex b) {
  return std::abs(a - b) <= kHermitianTolerance * std::max(1.0, std::abs(a));
}

}  // namespace

SpectralFunction::SpectralFunction(int d, std::vector<std::pair<Frequency, Complex>> terms,
                                   bool real_valued)
    : d_(d), real_(real_valued) {
  if (d < 1) throw DomainError("spectral function needs d >= 1");
  for (auto& [k, c] : terms) {
    if (k.dim() != d) throw DomainError("frequency " + k.to_string() + " has wrong dimension");
    coeffs_[k] += c;
  }
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex{}; });
  if (!real_) return;
  for (const auto& [k, c] : coeffs_) {
    if (!close(coeff(-k), std::conj(c))) {
      throw DomainError("coefficient map is not Hermitian at k=" + k.to_string());
    }
  }
}

Complex SpectralFunction::coeff(const Frequency& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

SpectralFunction SpectralFunction::permuted(std::span<const int> perm) const {
  std::vector<std::pair<Frequency, Complex>> terms;
  terms.reserve(coeffs_.size());
  for (const auto& [k, c] : coeffs_) terms.emplace_back(k.permuted(perm), c);
  return SpectralFunction(d_, std::move(terms), real_);
}

double norm(const SpectralFunction& f, WeightScheme scheme) {
  double total = 0.0;
  for (const auto& [k, c] : f.coeffs()) total += std::abs(c) * weight(k, scheme);
  return total;
}

Complex unit_phase(std::int64_t numerator, std::int64_t denominator) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator) /
                       static_cast<double>(denominator);
  return {std::cos(angle), std::sin(angle)};
}

std::int64_t phase_numerator(const Frequency& k, std::span<const std::int64_t> numerators,
                             std::int64_t denominator) {
  int128 acc = 0;
  for (const auto& [index, value] : k.entries()) {
    acc += static_cast<int128>(mod_floor(value, denominator)) *
           numerators[static_cast<std::size_t>(index)];
    acc %= denominator;
  }
  return mod_floor(acc, denominator);
}

Complex evaluate(const SpectralFunction& f, std::span<const std::int64_t> numerators,
                 std::int64_t denominator) {
  if (numerators.size() != static_cast<std::size_t>(f.dim())) {
    throw DomainError("point dimension " + std::to_string(numerators.size()) +
                      " does not match function dimension " + std::to_string(f.dim()));
  }
  Complex sum{};
  for (const auto& [k, c] : f.coeffs()) {
    sum += c * unit_phase(phase_numerator(k, numerators, denominator), denominator);
  }
  return sum;
}

Complex evaluate(const SpectralFunction& f, const RationalPoint& x) {
  return evaluate(f, x.numerators, x.denominator);
}

Complex evaluate(const SpectralFunction& f, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(f.dim())) {
    throw DomainError("point dimension does not match function dimension");
  }
  Complex sum{};
  for (const auto& [k, c] : f.coeffs()) {
    double phase = 0.0;
    for (const auto& [index, value] : k.entries()) {
      phase += static_cast<double>(value) * x[static_cast<std::size_t>(index)];
    }
    phase -= std::floor(phase);
    sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum;
}

Complex integral(const SpectralFunction& f) { return f.coeff(Frequency(f.dim())); }

// ---------------------------------------------------------------- random functions

namespace {

// Representative of {k, -k}: first nonzero entry positive.
Frequency canonical_sign(const Frequency& k) {
  return k.entries().front().second < 0 ? -k : k;
}

// Number of pairs {k,-k}, k != 0, in [-M, M]^d, saturated at `cap`.
std::int64_t available_pairs(int d, std::int64_t max_abs, std::int64_t cap) {
  const double side = 2.0 * static_cast<double>(max_abs) + 1.0;
  const double total = (std::pow(side, d) - 1.0) / 2.0;
  return total >= static_cast<double>(cap) ? cap : static_cast<std::int64_t>(std::llround(total));
}

}  // namespace

SpectralFunction random_function(std::uint64_t seed, int d, int support_budget,
                                 std::int64_t max_abs_freq, WeightScheme scheme) {
  if (d < 1 || support_budget < 1 || max_abs_freq < 1) {
    throw DomainError("random_function needs d >= 1, budget >= 1, max_abs_freq >= 1");
  }
  constexpr std::int64_t kCap = std::int64_t{1} << 40;
  const std::int64_t available = available_pairs(d, max_abs_freq, kCap);
  if (support_budget > available) {
    throw DomainError("support budget " + std::to_string(support_budget) + " exceeds the " +
                      std::to_string(available) + " available frequency pairs");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(1, max_abs_freq);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> modulus(0.1, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::vector<Frequency> chosen;
  std::set<Frequency> seen;
  if (available <= 4 * static_cast<std::int64_t>(support_budget)) {
    // Dense regime: enumerate every representative and sample without replacement.
    std::vector<Frequency> pool;
    std::vector<std::int64_t> k(static_cast<std::size_t>(d), -max_abs_freq);
    while (true) {
      const auto f = Frequency::from_dense(k);
      if (!f.is_zero() && f.entries().front().second > 0) pool.push_back(f);
      std::size_t j = 0;
      while (j < k.size() && k[j] == max_abs_freq) k[j++] = -max_abs_freq;
      if (j == k.size()) break;
      ++k[j];
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    chosen.assign(pool.begin(), pool.begin() + support_budget);
  } else {
    while (chosen.size() < static_cast<std::size_t>(support_budget)) {
      std::vector<Frequency::Entry> pairs;
      for (int j = 0; j < d; ++j) {
        if (coin(rng) == 1) pairs.emplace_back(j, coin(rng) == 1 ? entry(rng) : -entry(rng));
      }
      if (pairs.empty()) continue;
      const auto k = canonical_sign(Frequency::from_pairs(d, std::move(pairs)));
      if (seen.insert(k).second) chosen.push_back(k);
    }
  }

  std::vector<std::pair<Frequency, Complex>> terms;
  double total = 0.0;
  for (const auto& k : chosen) {
    const Complex c = std::polar(modulus(rng), angle(rng));
    total += 2.0 * std::abs(c) * weight(k, scheme);
    terms.emplace_back(k, c);
  }
  std::vector<std::pair<Frequency, Complex>> hermitian;
  hermitian.reserve(2 * terms.size());
  for (const auto& [k, c] : terms) {
    const Complex scaled = c / total;
    hermitian.emplace_back(k, scaled);
    hermitian.emplace_back(-k, std::conj(scaled));
  }
  return SpectralFunction(d, std::move(hermitian), true);
}

// ---------------------------------------------------------------- JSON

std::string to_json(const SpectralFunction& f) {
  nlohmann::ordered_json doc;
  doc["d"] = f.dim();
  doc["real"] = f.real_valued();
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& [k, c] : f.coeffs()) {
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& [index, value] : k.entries()) pairs.push_back({index, value});
    coeffs.push_back({{"k", pairs}, {"re", c.real()}, {"im", c.imag()}});
  }
  doc["coeffs"] = coeffs;
  return doc.dump(2);
}

SpectralFunction spectral_function_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const int d = doc.at("d").get<int>();
    const bool real = doc.value("real", false);
    std::vector<std::pair<Frequency, Complex>> terms;
    for (const auto& term : doc.at("coeffs")) {
      std::vector<Frequency::Entry> pairs;
      for (const auto& pair : term.at("k")) {
        pairs.emplace_back(pair.at(0).get<int>(), pair.at(1).get<std::int64_t>());
      }
      const Complex c{term.value("re", 0.0), term.value("im", 0.0)};
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw DataError("non-finite coefficient");
      }
      terms.emplace_back(Frequency::from_pairs(d, std::move(pairs)), c);
    }
    return SpectralFunction(d, std::move(terms), real);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed function JSON: ") + e.what());
  }
}

}  // namespace kqmc
