#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "kqmc/adversary.hpp"
#include "kqmc/errors.hpp"
#include "kqmc/expsum.hpp"
#include "kqmc/fourier.hpp"
#include "kqmc/integrator.hpp"
#include "kqmc/korobov.hpp"

namespace kqmc::cli {
namespace {

using Json = nlohmann::ordered_json;

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json report_json(const BoundReport& r) {
  return Json{{"label", r.label}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"satisfied", r.satisfied}, {"slack", r.slack}};
}

Frequency parse_frequency(const std::string& text) {
  std::vector<std::int64_t> k;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const auto value = std::stoll(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      k.push_back(value);
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse frequency entry '" + item + "'");
    }
  }
  if (k.empty()) throw DomainError("frequency --k must list at least one entry");
  return Frequency::from_dense(k);
}

struct Builtin {
  std::optional<SpectralFunction> spectral;
  Integrand blackbox;
  double exact = 0.0;
};

Builtin make_builtin(const std::string& name, int d, std::uint64_t seed) {
  Builtin b;
  if (name == "const") {
    b.spectral = SpectralFunction(d, {{Frequency(d), 1.0}}, true);
  } else if (name == "cos1") {
    const auto k = Frequency::axis(d, 0, 1);
    b.spectral = SpectralFunction(d, {{k, 0.5}, {-k, 0.5}}, true);
  } else if (name == "cos-sum") {
    std::vector<std::pair<Frequency, Complex>> terms;
    for (int j = 0; j < d; ++j) {
      const auto k = Frequency::axis(d, j, 1);
      terms.emplace_back(k, 0.5 / d);
      terms.emplace_back(-k, 0.5 / d);
    }
    b.spectral = SpectralFunction(d, std::move(terms), true);
  } else if (name == "random") {
    b.spectral = random_function(seed, d, 8, 50, WeightScheme::F2);
  } else if (name == "bump") {
    // prod_j (1 + cos(2 pi x_j) / 2), integral 1.
    b.blackbox = [](std::span<const double> x) {
      double v = 1.0;
      for (const double xj : x) v *= 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * xj);
      return v;
    };
    b.exact = 1.0;
  } else if (name == "linear") {
    // prod_j 2 x_j, integral 1.
    b.blackbox = [](std::span<const double> x) {
      double v = 1.0;
      for (const double xj : x) v *= 2.0 * xj;
      return v;
    };
    b.exact = 1.0;
  } else {
    throw DomainError("unknown builtin '" + name + "' (const, cos1, cos-sum, random, bump, linear)");
  }
  return b;
}

}  // namespace

DensityConstants resolve_constants(const GlobalOptions& global) {
  DensityConstants c = kDefaultDensity;
  std::string file = global.constants_file;
  if (file.empty()) {
    if (const char* env = std::getenv("KQMC_DENSITY_FILE"); env != nullptr) file = env;
  }
  if (!file.empty()) {
    try {
      const auto doc = nlohmann::json::parse(read_file(file));
      c.c_p = doc.at("c_p").get<double>();
      c.C_p = doc.at("C_p").get<double>();
      c.calibrated_up_to = doc.value("m_max", std::int64_t{0});
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed constants file '" + file + "': " + e.what());
    }
  }
  if (global.c_p) c.c_p = *global.c_p;
  if (global.C_p) c.C_p = *global.C_p;
  if (!(c.c_p > 0.0 && c.c_p < std::min(1.0, c.C_p))) {
    throw DomainError("density constants must satisfy 0 < c_p < min(1, C_p)");
  }
  return c;
}

ExitCode run_primes(const GlobalOptions&, const PrimesOptions& opts) {
  if (opts.calibrate) {
    const auto c = calibrate_constants(opts.max);
    emit(Json{{"c_p", c.c_p}, {"C_p", c.C_p}, {"m_max", c.calibrated_up_to}});
    return ExitCode::ok;
  }
  const auto w = enumerate_window(opts.m);
  if (opts.json) {
    emit(Json{{"m", w.m},
              {"primes", w.primes},
              {"count", w.size()},
              {"sum_p2", w.total_points()},
              {"density_ratio", density_ratio(opts.m)}});
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? " " : "") << w.primes[i];
    std::cout << '\n';
  }
  return ExitCode::ok;
}

ExitCode run_points(const GlobalOptions&, const PointsOptions& opts) {
  const auto kind = set_kind_from_string(opts.kind);
  std::ofstream file;
  if (!opts.out.empty()) {
    file.open(opts.out);
    if (!file) throw DataError("cannot write '" + opts.out + "'");
  }
  std::ostream& out = opts.out.empty() ? std::cout : file;
  if (opts.p > 0) {
    write_points(out, KorobovSet(kind, opts.p, opts.d, Storage::streaming));
  } else {
    write_points(out, union_set(kind, opts.m, opts.d, Storage::streaming));
  }
  return ExitCode::ok;
}

ExitCode run_norm(const GlobalOptions&, const NormOptions& opts) {
  const auto f = spectral_function_from_json(read_file(opts.fn));
  Json doc{{"d", f.dim()}, {"terms", f.coeffs().size()}};
  if (opts.scheme == "all") {
    for (const auto s : {WeightScheme::F1, WeightScheme::F2, WeightScheme::F3}) {
      doc[std::string(to_string(s))] = norm(f, s);
    }
  } else {
    const auto s = weight_scheme_from_string(opts.scheme);
    doc["scheme"] = to_string(s);
    doc["norm"] = norm(f, s);
  }
  emit(doc);
  return ExitCode::ok;
}

ExitCode run_expsum(const GlobalOptions& global, const ExpsumOptions& opts) {
  const auto k = parse_frequency(opts.k);
  const auto d = static_cast<int>(k.dim());
  const bool single = opts.kind == "S" || opts.kind == "T";
  if (!single && opts.kind != "P1" && opts.kind != "P2") {
    throw DomainError("--kind must be S, T, P1 or P2");
  }
  if (single && opts.p <= 0) throw DomainError("--kind S|T needs --p");
  if (!single && opts.m <= 0) throw DomainError("--kind P1|P2 needs --m");

  const auto consts = resolve_constants(global);
  ExpSumResult result;
  std::optional<double> bound;
  std::string bound_kind;
  Json extra;
  if (single) {
    const KorobovSet set(set_kind_from_string(opts.kind), opts.p, d);
    result = expsum_single(k, set);
    if (k.is_zero() || divides_all(opts.p, k)) {
      bound = 1.0;
      bound_kind = "trivial";
    } else if (opts.p <= d) {
      bound_kind = "unverified";
    } else {
      bound = lemma_bound(k, opts.p);
      bound_kind = "width/p";
    }
    if (opts.report && !k.is_zero()) {
      extra["root_count"] = root_count(k, opts.p);
      if (set.kind() == SetKind::S && opts.p > d) extra["decomposition"] = report_json(decomposition_check(k, opts.p));
    }
  } else {
    const auto uset = union_set(set_kind_from_string(opts.kind), opts.m, d);
    result = expsum_union(k, uset);
    if (k.is_zero()) {
      bound = 1.0;
      bound_kind = "trivial";
    } else if (uset.window.min_prime() <= d) {
      bound_kind = "unverified";
    } else {
      bound = std::min(1.0, corollary_bound(k, opts.m, consts));
      bound_kind = *bound < 1.0 ? "corollary" : "trivial";
    }
    if (opts.report && !k.is_zero()) {
      extra["divisor_count"] = divisor_count(k, uset.window);
      extra["divisor_count_bound"] = divisor_count_bound(k, opts.m);
      extra["window"] = uset.window.primes;
    }
  }

  const double magnitude = std::abs(result.value);
  Json doc{{"kind", to_string(result.set_kind)},
           {"p_or_m", result.p_or_m},
           {"k", k.dense()},
           {"n_terms", result.n_terms},
           {"re", result.value.real()},
           {"im", result.value.imag()},
           {"abs", magnitude},
           {"bound", bound ? Json(*bound) : Json(nullptr)},
           {"bound_kind", bound_kind}};
  ExitCode code = ExitCode::ok;
  if (bound) {
    const auto r = make_report("|expsum| <= bound", magnitude, *bound);
    doc["slack"] = r.slack;
    doc["satisfied"] = r.satisfied;
    if (!r.satisfied) code = ExitCode::invariant_violated;
  }
  if (opts.report) {
    for (auto& [key, value] : extra.items()) doc[key] = value;
    if (doc.contains("decomposition") && !doc["decomposition"]["satisfied"].get<bool>()) {
      code = ExitCode::invariant_violated;
    }
  }
  emit(doc);
  return code;
}

ExitCode run_integrate(const GlobalOptions& global, const IntegrateOptions& opts) {
  if (opts.fn.empty() == opts.builtin.empty()) throw DomainError("give exactly one of --fn and --builtin");
  if (opts.m.empty()) throw DomainError("--m is required");
  const auto consts = resolve_constants(global);
  const auto kind = set_kind_from_string(opts.kind);

  Builtin target;
  if (!opts.fn.empty()) {
    target.spectral = spectral_function_from_json(read_file(opts.fn));
  } else {
    target = make_builtin(opts.builtin, opts.d, global.seed);
  }
  const int d = target.spectral ? target.spectral->dim() : opts.d;
  if (d < 1) throw DomainError("--d must be >= 1");

  ExitCode code = ExitCode::ok;
  Json rows = Json::array();
  if (opts.csv) std::cout << "kind,m,n,d,estimate,exact,error,bound\n";
  for (const auto m : opts.m) {
    const auto uset = union_set(kind, m, d);
    Json row{{"kind", uset.label()}, {"m", m}, {"n", uset.size()}, {"d", d}};
    double estimate = 0.0;
    double exact = 0.0;
    double error = 0.0;
    if (target.spectral) {
      const auto& f = *target.spectral;
      const Complex q = qmc_apply(f, uset);
      estimate = q.real();
      exact = integral(f).real();
      error = exact_error(f, uset);
      row["estimate"] = complex_json(q);
      row["exact"] = complex_json(integral(f));
      row["error"] = error;
      row["sampling_error"] = std::abs(integral(f) - q);
      row["norm_f2"] = norm(f, WeightScheme::F2);
    } else {
      estimate = qmc_apply(target.blackbox, uset);
      exact = target.exact;
      error = std::abs(exact - estimate);
      row["estimate"] = estimate;
      row["exact"] = exact;
      row["error"] = error;
    }
    std::optional<double> bound;
    if (uset.window.min_prime() > d) {
      const auto cert = wc_bound(m, consts, d);
      row["certificate"] = cert.bound;
      if (target.spectral) {
        bound = cert.bound * norm(*target.spectral, WeightScheme::F2);
        row["bound"] = *bound;
        const auto r = make_report("error <= bound * norm", error, *bound, 1e-9);
        row["satisfied"] = r.satisfied;
        if (!r.satisfied) code = ExitCode::invariant_violated;
      }
    }
    if (opts.csv) {
      std::cout << std::setprecision(17) << uset.label() << ',' << m << ',' << uset.size() << ',' << d << ','
                << estimate << ',' << exact << ',' << error << ',';
      if (bound) std::cout << *bound;
      std::cout << '\n';
    }
    rows.push_back(row);
  }
  if (!opts.csv) emit(rows.size() == 1 ? rows.front() : rows);
  return code;
}

ExitCode run_certify(const GlobalOptions& global, const CertifyOptions& opts) {
  const auto cert = wc_bound(opts.m, resolve_constants(global), opts.d);
  emit(Json{{"m", cert.m}, {"d", opts.d}, {"c_p", cert.c_p}, {"bound", cert.bound}, {"d_max", cert.d_max}, {"n", cert.n}});
  return ExitCode::ok;
}

ExitCode run_plan(const GlobalOptions& global, const PlanOptions& opts) {
  const auto consts = resolve_constants(global);
  if (opts.eps.empty()) throw DomainError("--eps is required");
  Json rows = Json::array();
  if (opts.csv) std::cout << "eps,d,m,n,bound\n";
  for (const double eps : opts.eps) {
    const auto p = plan(eps, opts.d, consts);
    if (opts.csv) {
      std::cout << std::setprecision(17) << eps << ',' << opts.d << ',' << p.m << ',' << p.n << ',' << p.bound << '\n';
    }
    rows.push_back(Json{{"eps", eps},
                        {"d", opts.d},
                        {"c_p", consts.c_p},
                        {"m", p.m},
                        {"n", p.n},
                        {"m_accuracy", p.m_accuracy},
                        {"m_dimension", p.m_dimension},
                        {"bound", p.bound}});
  }
  if (!opts.csv) emit(rows.size() == 1 ? rows.front() : rows);
  return ExitCode::ok;
}

namespace {

LinearAlgorithm load_algorithm(const std::string& nodes_path, const std::string& weights_path) {
  auto nodes_in = open_file(nodes_path);
  auto alg = LinearAlgorithm::qmc(read_nodes(nodes_in));
  if (!weights_path.empty()) {
    auto weights_in = open_file(weights_path);
    alg.weights = read_weights(weights_in);
  }
  alg.validate();
  return alg;
}

}  // namespace

ExitCode run_fool(const GlobalOptions&, const FoolOptions& opts) {
  const auto alg = load_algorithm(opts.nodes, opts.weights);
  const auto cert = fooling_certificate(alg, opts.d);
  if (!opts.gstar_out.empty()) {
    std::ofstream out(opts.gstar_out);
    if (!out) throw DataError("cannot write '" + opts.gstar_out + "'");
    out << to_json(cert.g_star) << '\n';
  }
  std::cout << to_json(cert) << '\n';
  const auto report = verify_certificate(cert, alg);
  if (!report.ok()) {
    std::cerr << "certificate failed its own verification:\n" << report.failures();
    return ExitCode::invariant_violated;
  }
  return ExitCode::ok;
}

ExitCode run_verify(const GlobalOptions&, const VerifyOptions& opts) {
  const auto alg = load_algorithm(opts.nodes, opts.weights);
  const auto cert = certificate_from_json(read_file(opts.cert));
  const auto report = verify_certificate(cert, alg);
  Json checks = Json::array();
  for (const auto& r : report.checks) checks.push_back(report_json(r));
  emit(Json{{"ok", report.ok()}, {"checks", checks}});
  return report.ok() ? ExitCode::ok : ExitCode::invariant_violated;
}

}  // namespace kqmc::cli
