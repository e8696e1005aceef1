#include "kqmc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "kqmc/errors.hpp"
#include "kqmc/summation.hpp"

namespace kqmc {
namespace {

constexpr double kPivotThreshold = 1e-12;

Complex character(const Frequency& k, const RationalPoint& x) {
  return unit_phase(phase_numerator(k, x.numerators, x.denominator), x.denominator);
}

void require_nodes(std::span<const RationalPoint> nodes, int d) {
  for (const auto& x : nodes) {
    if (static_cast<int>(x.dim()) != d) {
      throw DomainError("node dimension " + std::to_string(x.dim()) + " differs from d=" +
                        std::to_string(d));
    }
  }
}

}  // namespace

FoolingIndexSet build_index_set(std::int64_t n, int d) {
  if (n < 1 || d < 1) throw DomainError("index set needs n >= 1 and d >= 1");
  FoolingIndexSet a;
  a.n = n;
  a.d = d;
  a.frequencies.reserve(static_cast<std::size_t>(1 + d * a.per_axis()));
  a.frequencies.emplace_back(d);
  for (int j = 0; j < d; ++j) {
    for (std::int64_t k = 1; k <= a.per_axis(); ++k) a.frequencies.push_back(Frequency::axis(d, j, k));
  }
  return a;
}

ComplexVector nullspace_vector(std::span<const RationalPoint> nodes, const FoolingIndexSet& index_set) {
  const std::size_t rows = nodes.size();
  const std::size_t cols = index_set.size();
  if (cols <= rows) {
    throw DomainError("nullspace needs more unknowns (" + std::to_string(cols) +
                      ") than equations (" + std::to_string(rows) + ")");
  }
  require_nodes(nodes, index_set.d);

  std::vector<ComplexVector> a(rows, ComplexVector(cols));
  std::vector<double> scale(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      a[r][c] = character(index_set.frequencies[c], nodes[r]);
      if (!std::isfinite(a[r][c].real()) || !std::isfinite(a[r][c].imag())) {
        throw DataError("non-finite entry in the phase matrix");
      }
      scale[r] = std::max(scale[r], std::abs(a[r][c]));
    }
  }

  // Reduced row echelon form; pivot_col[i] is the pivot column of row i.
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = rank;
    double best_ratio = -1.0;
    for (std::size_t r = rank; r < rows; ++r) {
      const double ratio = scale[r] > 0.0 ? std::abs(a[r][c]) / scale[r] : 0.0;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = r;
      }
    }
    if (best_ratio < kPivotThreshold) continue;
    std::swap(a[best], a[rank]);
    std::swap(scale[best], scale[rank]);
    const Complex inv = 1.0 / a[rank][c];
    for (std::size_t cc = c; cc < cols; ++cc) a[rank][cc] *= inv;
    a[rank][c] = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == Complex{}) continue;
      const Complex factor = a[r][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= factor * a[rank][cc];
      a[r][c] = 0.0;
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++rank;
  }

  const auto free_it = std::find(is_pivot.begin(), is_pivot.end(), false);
  const auto free_col = static_cast<std::size_t>(free_it - is_pivot.begin());
  ComplexVector c(cols, Complex{});
  c[free_col] = 1.0;
  for (std::size_t i = 0; i < rank; ++i) c[pivot_col[i]] = -a[i][free_col];
  return c;
}

std::vector<double> nullspace_residuals(std::span<const RationalPoint> nodes,
                                        const FoolingIndexSet& index_set, const ComplexVector& c) {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const auto& x : nodes) {
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < index_set.size(); ++i) sum.add(c[i] * character(index_set.frequencies[i], x));
    out.push_back(std::abs(sum.value()));
  }
  return out;
}

double shifted_weight(const Frequency& k, const Frequency& l) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& [index, value] : k.entries()) {
    const auto diff = value - l[index];
    const double lg = diff == 0 ? -std::numeric_limits<double>::infinity()
                                : std::log(std::abs(static_cast<double>(diff)));
    smallest = std::min(smallest, lg);
  }
  if (k.is_zero()) return 1.0;
  return std::max(1.0, smallest);
}

double counting_sum(const FoolingIndexSet& index_set, const Frequency& l) {
  CompensatedSum sum;
  for (const auto& k : index_set.frequencies) sum.add(shifted_weight(k, l));
  return sum.value();
}

double counting_max(const FoolingIndexSet& index_set) {
  double best = 0.0;
  for (const auto& l : index_set.frequencies) best = std::max(best, counting_sum(index_set, l));
  return best;
}

SpectralFunction build_g_star(const FoolingIndexSet& index_set, const ComplexVector& coeffs,
                              std::size_t pivot_index, double C) {
  if (coeffs.size() != index_set.size() || pivot_index >= coeffs.size()) {
    throw DomainError("coefficient vector does not match the index set");
  }
  const Frequency& l = index_set.frequencies[pivot_index];
  std::vector<std::pair<Frequency, Complex>> terms;
  terms.reserve(2 * coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Complex half = C * coeffs[i] / 2.0;
    const Frequency shifted = index_set.frequencies[i] - l;
    terms.emplace_back(shifted, half);
    terms.emplace_back(-shifted, std::conj(half));
  }
  return SpectralFunction(index_set.d, std::move(terms), true);
}

FoolingCertificate fooling_certificate(const LinearAlgorithm& alg, int d) {
  alg.validate();
  if (alg.size() == 0) throw DomainError("fooling certificate needs at least one node");
  if (alg.dim() != d) {
    throw DomainError("nodes have dimension " + std::to_string(alg.dim()) + ", expected " +
                      std::to_string(d));
  }
  FoolingCertificate cert;
  cert.d = d;
  cert.n = static_cast<std::int64_t>(alg.size());
  cert.index_set = build_index_set(cert.n, d);

  auto c = nullspace_vector(alg.nodes, cert.index_set);
  std::size_t pivot = 0;
  double largest = -1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > largest) {
      largest = std::abs(c[i]);
      pivot = i;
    }
  }
  const Complex divisor = c[pivot];
  for (auto& value : c) value /= divisor;
  c[pivot] = 1.0;

  cert.coeffs = std::move(c);
  cert.pivot_index = pivot;
  cert.pivot = cert.index_set.frequencies[pivot];
  cert.C = 1.0 / counting_max(cert.index_set);
  cert.g_star = build_g_star(cert.index_set, cert.coeffs, pivot, cert.C);

  for (const auto& x : alg.nodes) cert.residual_max = std::max(cert.residual_max, std::abs(evaluate(cert.g_star, x)));
  cert.norm_f1 = norm(cert.g_star, WeightScheme::F1);
  cert.qmc_value = apply(alg, cert.g_star);
  cert.integral = integral(cert.g_star).real();
  cert.guaranteed_bound = cert.n > 2 * static_cast<std::int64_t>(d);
  cert.lower_bound = static_cast<double>(d) / (2.0 * static_cast<double>(cert.n) * static_cast<double>(cert.n));
  return cert;
}

bool VerificationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundReport& r) { return r.satisfied; });
}

std::string VerificationReport::failures() const {
  std::ostringstream out;
  for (const auto& r : checks) {
    if (!r.satisfied) out << r.label << ": " << r.lhs << " > " << r.rhs << '\n';
  }
  return out.str();
}

VerificationReport verify_certificate(const FoolingCertificate& cert, const LinearAlgorithm& alg) {
  alg.validate();
  VerificationReport report;
  const auto n = static_cast<std::int64_t>(alg.size());
  const auto index_set = build_index_set(std::max<std::int64_t>(n, 1), cert.d);
  report.checks.push_back(make_report("index set matches node count",
                                      static_cast<double>(cert.coeffs.size() != index_set.size() ||
                                                          cert.n != n),
                                      0.0, 0.0));
  if (!report.checks.back().satisfied || alg.dim() != cert.d) {
    report.checks.push_back(make_report("node dimension", std::abs(alg.dim() - cert.d), 0.0, 0.0));
    return report;
  }

  double max_coeff = 0.0;
  for (const auto& c : cert.coeffs) max_coeff = std::max(max_coeff, std::abs(c));
  report.checks.push_back(make_report("max |c_k| <= 1", max_coeff, 1.0));
  report.checks.push_back(make_report("c_pivot = 1", std::abs(cert.coeffs.at(cert.pivot_index) - 1.0), 0.0, 0.0));

  const double expected_C = 1.0 / counting_max(index_set);
  report.checks.push_back(make_report("C matches normalizing constant", std::abs(cert.C - expected_C), 0.0));

  const auto g = build_g_star(index_set, cert.coeffs, cert.pivot_index, cert.C);
  double drift = 0.0;
  for (const auto& [k, c] : g.coeffs()) drift = std::max(drift, std::abs(c - cert.g_star.coeff(k)));
  for (const auto& [k, c] : cert.g_star.coeffs()) drift = std::max(drift, std::abs(c - g.coeff(k)));
  report.checks.push_back(make_report("stored g* matches rebuilt g*", drift, 0.0));

  double residual = 0.0;
  for (const auto& x : alg.nodes) residual = std::max(residual, std::abs(evaluate(g, x)));
  report.checks.push_back(make_report("max_h |g*(x_h)|", residual, kResidualTolerance, 0.0));

  double weight_mass = 0.0;
  for (const auto w : alg.weights) weight_mass += std::abs(w);
  report.checks.push_back(make_report("|Q(g*)|", std::abs(apply(alg, g)),
                                      kResidualTolerance * std::max(1.0, weight_mass), 0.0));
  report.checks.push_back(make_report("norm F1 of g* <= 1", norm(g, WeightScheme::F1), 1.0 + kNormTolerance, 0.0));
  report.checks.push_back(make_report("I(g*) = C", std::abs(integral(g) - cert.C), 0.0));
  if (n > 2 * static_cast<std::int64_t>(cert.d)) {
    const double lower = static_cast<double>(cert.d) / (2.0 * static_cast<double>(n) * static_cast<double>(n));
    // lower <= C, written as lhs <= rhs.
    report.checks.push_back(make_report("C >= d/(2n^2)", lower, cert.C));
  }
  return report;
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::ordered_json complex_json(Complex z) { return {z.real(), z.imag()}; }

Complex complex_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

std::string to_json(const FoolingCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["d"] = cert.d;
  doc["n"] = cert.n;
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : cert.coeffs) coeffs.push_back(complex_json(c));
  doc["coeffs"] = coeffs;
  doc["pivot_index"] = cert.pivot_index;
  doc["pivot"] = cert.pivot.dense();
  doc["C"] = cert.C;
  doc["residual_max"] = cert.residual_max;
  doc["norm_f1"] = cert.norm_f1;
  doc["qmc_value"] = complex_json(cert.qmc_value);
  doc["integral"] = cert.integral;
  doc["guaranteed_bound"] = cert.guaranteed_bound;
  doc["lower_bound"] = cert.lower_bound;
  doc["g_star"] = nlohmann::ordered_json::parse(to_json(cert.g_star));
  return doc.dump(2);
}

FoolingCertificate certificate_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    FoolingCertificate cert;
    cert.d = doc.at("d").get<int>();
    cert.n = doc.at("n").get<std::int64_t>();
    cert.index_set = build_index_set(cert.n, cert.d);
    for (const auto& c : doc.at("coeffs")) cert.coeffs.push_back(complex_from(c));
    cert.pivot_index = doc.at("pivot_index").get<std::size_t>();
    if (cert.pivot_index >= cert.index_set.size()) throw DataError("pivot index out of range");
    cert.pivot = cert.index_set.frequencies[cert.pivot_index];
    cert.C = doc.at("C").get<double>();
    cert.residual_max = doc.at("residual_max").get<double>();
    cert.norm_f1 = doc.at("norm_f1").get<double>();
    cert.qmc_value = complex_from(doc.at("qmc_value"));
    cert.integral = doc.at("integral").get<double>();
    cert.guaranteed_bound = doc.at("guaranteed_bound").get<bool>();
    cert.lower_bound = doc.at("lower_bound").get<double>();
    cert.g_star = spectral_function_from_json(doc.at("g_star").dump());
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed certificate JSON: ") + e.what());
  }
}

}  // namespace kqmc
