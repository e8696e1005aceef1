#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "kqmc/errors.hpp"

using namespace kqmc::cli;

int main(int argc, char** argv) {
  CLI::App app{"kqmc: quasi-Monte Carlo on unions of Korobov sets"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--constants", global.constants_file, "JSON file with c_p and C_p");
  app.add_option("--c-p", global.c_p, "override the lower density constant");
  app.add_option("--C-p", global.C_p, "override the upper density constant");
  app.add_option("--seed", global.seed, "seed for randomized builtins");

  ExitCode code = ExitCode::ok;

  PrimesOptions primes;
  auto* primes_cmd = app.add_subcommand("primes", "list the primes of a window (m/2, m]");
  primes_cmd->add_option("--m", primes.m, "window parameter");
  primes_cmd->add_flag("--json", primes.json, "emit JSON");
  primes_cmd->add_flag("--calibrate", primes.calibrate, "recompute the density constants");
  primes_cmd->add_option("--max", primes.max, "calibration range upper end");
  primes_cmd->callback([&] {
    if (!primes.calibrate && primes.m < 2) throw CLI::ValidationError("--m", "must be >= 2");
    code = run_primes(global, primes);
  });

  PointsOptions points;
  auto* points_cmd = app.add_subcommand("points", "export a Korobov set or a union of them");
  points_cmd->add_option("--kind", points.kind, "S or T")->required();
  points_cmd->add_option("--m", points.m, "window parameter for the union");
  points_cmd->add_option("--p", points.p, "single prime");
  points_cmd->add_option("--d", points.d, "dimension")->required();
  points_cmd->add_option("--out", points.out, "output file (default stdout)");
  points_cmd->callback([&] {
    if ((points.m > 0) == (points.p > 0)) throw CLI::ValidationError("give exactly one of --m and --p");
    code = run_points(global, points);
  });

  NormOptions norm_opts;
  auto* norm_cmd = app.add_subcommand("norm", "weighted Fourier norm of a function file");
  norm_cmd->add_option("--scheme", norm_opts.scheme, "f1, f2, f3 or all");
  norm_cmd->add_option("--fn", norm_opts.fn, "function JSON")->required();
  norm_cmd->callback([&] { code = run_norm(global, norm_opts); });

  ExpsumOptions expsum;
  auto* expsum_cmd = app.add_subcommand("expsum", "exponential sum of a frequency over a point set");
  expsum_cmd->add_option("--kind", expsum.kind, "S, T, P1 or P2")->required();
  expsum_cmd->add_option("--k", expsum.k, "comma separated frequency")->required();
  expsum_cmd->add_option("--p", expsum.p, "prime for S and T");
  expsum_cmd->add_option("--m", expsum.m, "window parameter for P1 and P2");
  expsum_cmd->add_flag("--report", expsum.report, "include diagnostic counts");
  expsum_cmd->callback([&] { code = run_expsum(global, expsum); });

  IntegrateOptions integrate;
  auto* integrate_cmd = app.add_subcommand("integrate", "QMC estimate with error and bound");
  integrate_cmd->add_option("--kind", integrate.kind, "P1 or P2");
  integrate_cmd->add_option("--m", integrate.m, "one or more window parameters")->required()->delimiter(',');
  integrate_cmd->add_option("--fn", integrate.fn, "function JSON");
  integrate_cmd->add_option("--builtin", integrate.builtin, "const, cos1, cos-sum, random, bump, linear");
  integrate_cmd->add_option("--d", integrate.d, "dimension for builtins");
  integrate_cmd->add_flag("--csv", integrate.csv, "emit CSV");
  integrate_cmd->callback([&] { code = run_integrate(global, integrate); });

  CertifyOptions certify;
  auto* certify_cmd = app.add_subcommand("certify", "worst-case error certificate for P1_m");
  certify_cmd->add_option("--m", certify.m, "window parameter")->required();
  certify_cmd->add_option("--d", certify.d, "dimension")->required();
  certify_cmd->callback([&] { code = run_certify(global, certify); });

  PlanOptions plan_opts;
  auto* plan_cmd = app.add_subcommand("plan", "smallest m reaching a target error");
  plan_cmd->add_option("--eps", plan_opts.eps, "one or more targets")->required()->delimiter(',');
  plan_cmd->add_option("--d", plan_opts.d, "dimension")->required();
  plan_cmd->add_flag("--csv", plan_opts.csv, "emit CSV");
  plan_cmd->callback([&] { code = run_plan(global, plan_opts); });

  FoolOptions fool;
  auto* fool_cmd = app.add_subcommand("fool", "build a function the given rule integrates badly");
  fool_cmd->add_option("--nodes", fool.nodes, "node file")->required();
  fool_cmd->add_option("--weights", fool.weights, "weight file (default 1/n)");
  fool_cmd->add_option("--d", fool.d, "dimension")->required();
  fool_cmd->add_option("--gstar-out", fool.gstar_out, "write the function JSON here");
  fool_cmd->callback([&] { code = run_fool(global, fool); });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a fooling certificate");
  verify_cmd->add_option("--cert", verify.cert, "certificate JSON")->required();
  verify_cmd->add_option("--nodes", verify.nodes, "node file")->required();
  verify_cmd->add_option("--weights", verify.weights, "weight file (default 1/n)");
  verify_cmd->callback([&] { code = run_verify(global, verify); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::usage);
  } catch (const kqmc::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return static_cast<int>(ExitCode::invariant_violated);
  } catch (const kqmc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain_error);
  } catch (const kqmc::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain_error);
  }
  return static_cast<int>(code);
}
