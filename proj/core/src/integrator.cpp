#include "kqmc/integrator.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "kqmc/errors.hpp"
#include "kqmc/expsum.hpp"
#include "kqmc/summation.hpp"

namespace kqmc {

LinearAlgorithm LinearAlgorithm::qmc(std::vector<RationalPoint> nodes) {
  LinearAlgorithm alg;
  const double w = nodes.empty() ? 0.0 : 1.0 / static_cast<double>(nodes.size());
  alg.weights.assign(nodes.size(), w);
  alg.nodes = std::move(nodes);
  return alg;
}

int LinearAlgorithm::dim() const {
  return nodes.empty() ? 0 : static_cast<int>(nodes.front().dim());
}

void LinearAlgorithm::validate() const {
  if (nodes.size() != weights.size()) {
    throw DomainError("algorithm has " + std::to_string(nodes.size()) + " nodes but " +
                      std::to_string(weights.size()) + " weights");
  }
  for (const auto& x : nodes) {
    if (static_cast<int>(x.dim()) != dim()) throw DomainError("algorithm nodes differ in dimension");
    if (x.denominator < 1) throw DomainError("node denominator must be positive");
  }
}

Complex apply(const LinearAlgorithm& alg, const SpectralFunction& f) {
  alg.validate();
  CompensatedComplexSum sum;
  for (std::size_t h = 0; h < alg.size(); ++h) sum.add(alg.weights[h] * evaluate(f, alg.nodes[h]));
  return sum.value();
}

double qmc_apply(const Integrand& f, const UnionPointSet& uset) {
  CompensatedSum sum;
  std::vector<double> x(static_cast<std::size_t>(uset.d));
  uset.for_each_point([&](const KorobovSet& set, std::int64_t index, std::span<const std::int64_t> num) {
    const auto denom = static_cast<double>(set.denominator());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<double>(num[j]) / denom;
    const double value = f(x);
    if (!std::isfinite(value)) {
      throw DataError("non-finite integrand value at point " + std::to_string(index) +
                      " of the p=" + std::to_string(set.p()) + " set");
    }
    sum.add(value);
  });
  return sum.value() / static_cast<double>(uset.size());
}

Complex qmc_apply(const SpectralFunction& f, const UnionPointSet& uset) {
  if (f.dim() != uset.d) throw DomainError("function and point set dimensions differ");
  CompensatedComplexSum sum;
  uset.for_each_point([&](const KorobovSet& set, std::int64_t, std::span<const std::int64_t> num) {
    sum.add(evaluate(f, num, set.denominator()));
  });
  return sum.value() / static_cast<double>(uset.size());
}

double exact_error(const SpectralFunction& f, const UnionPointSet& uset) {
  if (f.dim() != uset.d) throw DomainError("function and point set dimensions differ");
  CompensatedComplexSum sum;
  for (const auto& [k, c] : f.coeffs()) {
    if (k.is_zero()) continue;
    sum.add(c * expsum_union(k, uset).value);
  }
  return std::abs(sum.value());
}

double sampling_error(const SpectralFunction& f, const UnionPointSet& uset) {
  return std::abs(integral(f) - qmc_apply(f, uset));
}

ErrorCertificate wc_bound(std::int64_t m, const DensityConstants& consts, std::int64_t d) {
  const auto window = enumerate_window(m);
  if (window.min_prime() <= d) {
    throw PreconditionError("m=" + std::to_string(m) + " has least window prime " +
                            std::to_string(window.min_prime()) + " <= d=" + std::to_string(d) +
                            "; smallest admissible m is " + std::to_string(min_admissible_m(d)));
  }
  ErrorCertificate cert;
  cert.m = m;
  cert.c_p = consts.c_p;
  cert.bound = 16.0 / (consts.c_p * static_cast<double>(m));
  cert.d_max = window.min_prime() - 1;
  cert.n = window.total_points();
  return cert;
}

BudgetPlan plan(double eps, std::int64_t d, const DensityConstants& consts) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("plan needs 0 < eps < 1");
  if (d < 1) throw DomainError("plan needs d >= 1");
  BudgetPlan out;
  out.m_accuracy = static_cast<std::int64_t>(std::ceil(16.0 / (consts.c_p * eps)));
  out.m_dimension = min_admissible_m(d);
  out.m = std::max(out.m_accuracy, out.m_dimension);
  out.n = enumerate_window(out.m).total_points();
  out.bound = 16.0 / (consts.c_p * static_cast<double>(out.m));
  return out;
}

namespace {

constexpr std::int64_t kDecimalDenominator = std::int64_t{1} << 40;
constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 62;

struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

Fraction parse_coordinate(const std::string& token) {
  const auto slash = token.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string a = token.substr(0, slash);
      const std::string b = token.substr(slash + 1);
      const auto num = std::stoll(a, &used_a);
      const auto den = std::stoll(b, &used_b);
      if (used_a != a.size() || used_b != b.size() || den <= 0) throw DataError("bad rational");
      return {((num % den) + den) % den, den};
    }
    std::size_t used = 0;
    const double x = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(x) || x < 0.0 || x >= 1.0) {
      throw DataError("bad decimal");
    }
    auto num = static_cast<std::int64_t>(std::llround(x * static_cast<double>(kDecimalDenominator)));
    if (num == kDecimalDenominator) num = 0;
    return {num, kDecimalDenominator};
  } catch (const std::logic_error&) {
    throw DataError("cannot parse node coordinate '" + token + "'");
  } catch (const DataError&) {
    throw DataError("node coordinate '" + token + "' is not a value in [0,1)");
  }
}

RationalPoint common_denominator(const std::vector<Fraction>& coords) {
  std::int64_t den = 1;
  for (const auto& f : coords) {
    const std::int64_t g = std::gcd(den, f.den);
    if (den / g > kMaxDenominator / f.den) throw DataError("node denominators overflow");
    den = den / g * f.den;
  }
  RationalPoint x;
  x.denominator = den;
  for (const auto& f : coords) x.numerators.push_back(f.num * (den / f.den));
  return x;
}

}  // namespace

std::vector<RationalPoint> read_nodes(std::istream& in) {
  std::vector<RationalPoint> nodes;
  std::int64_t header_denom = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto pos = line.find("denom=");
      if (pos != std::string::npos) {
        try {
          header_denom = std::stoll(line.substr(pos + 6));
        } catch (const std::logic_error&) {
          throw DataError("bad denom= in node header: " + line);
        }
        if (header_denom < 1) throw DataError("bad denom= in node header: " + line);
      }
      continue;
    }
    std::istringstream row(line);
    std::string token;
    if (header_denom > 0) {
      RationalPoint x;
      x.denominator = header_denom;
      while (row >> token) {
        const auto f = parse_coordinate(token + "/" + std::to_string(header_denom));
        x.numerators.push_back(f.num);
      }
      nodes.push_back(std::move(x));
      continue;
    }
    std::vector<Fraction> coords;
    while (row >> token) coords.push_back(parse_coordinate(token));
    nodes.push_back(common_denominator(coords));
  }
  for (const auto& x : nodes) {
    if (x.dim() != nodes.front().dim() || x.dim() == 0) throw DataError("node file rows differ in dimension");
  }
  return nodes;
}

std::vector<double> read_weights(std::istream& in) {
  std::vector<double> weights;
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::getline(in, token);
      continue;
    }
    try {
      std::size_t used = 0;
      const double w = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(w)) throw std::invalid_argument("weight");
      weights.push_back(w);
    } catch (const std::logic_error&) {
      throw DataError("cannot parse weight '" + token + "'");
    }
  }
  return weights;
}

void write_nodes(std::ostream& out, std::span<const RationalPoint> nodes) {
  for (const auto& x : nodes) {
    for (std::size_t j = 0; j < x.dim(); ++j) {
      out << (j ? " " : "") << x.numerators[j] << '/' << x.denominator;
    }
    out << '\n';
  }
}

}  // namespace kqmc
