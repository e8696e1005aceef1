#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kqmc/primes.hpp"

namespace kqmc::cli {

enum class ExitCode : int {
  ok = 0,
  domain_error = 1,
  invariant_violated = 2,
  usage = 64,
};

struct GlobalOptions {
  std::string constants_file;  // falls back to $KQMC_DENSITY_FILE
  std::optional<double> c_p;
  std::optional<double> C_p;
  std::uint64_t seed = 1;
};

struct PrimesOptions {
  std::int64_t m = 0;
  bool json = false;
  bool calibrate = false;
  std::int64_t max = 100000;
};

struct PointsOptions {
  std::string kind = "S";
  std::int64_t m = 0;
  std::int64_t p = 0;
  int d = 1;
  std::string out;
};

struct NormOptions {
  std::string scheme = "f2";
  std::string fn;
};

struct ExpsumOptions {
  std::string kind = "S";
  std::string k;
  std::int64_t p = 0;
  std::int64_t m = 0;
  bool report = false;
};

struct IntegrateOptions {
  std::string kind = "P1";
  std::vector<std::int64_t> m;
  std::string fn;
  std::string builtin;
  int d = 1;
  bool csv = false;
};

struct CertifyOptions {
  std::int64_t m = 0;
  std::int64_t d = 1;
};

struct PlanOptions {
  std::vector<double> eps;
  std::int64_t d = 1;
  bool csv = false;
};

struct FoolOptions {
  std::string nodes;
  std::string weights;
  int d = 1;
  std::string gstar_out;
};

struct VerifyOptions {
  std::string cert;
  std::string nodes;
  std::string weights;
};

/// Resolves the density constants: defaults, then the constants file, then
/// explicit flag overrides. Throws DomainError if the result is inconsistent.
[[nodiscard]] DensityConstants resolve_constants(const GlobalOptions& global);

ExitCode run_primes(const GlobalOptions& global, const PrimesOptions& opts);
ExitCode run_points(const GlobalOptions& global, const PointsOptions& opts);
ExitCode run_norm(const GlobalOptions& global, const NormOptions& opts);
ExitCode run_expsum(const GlobalOptions& global, const ExpsumOptions& opts);
ExitCode run_integrate(const GlobalOptions& global, const IntegrateOptions& opts);
ExitCode run_certify(const GlobalOptions& global, const CertifyOptions& opts);
ExitCode run_plan(const GlobalOptions& global, const PlanOptions& opts);
ExitCode run_fool(const GlobalOptions& global, const FoolOptions& opts);
ExitCode run_verify(const GlobalOptions& global, const VerifyOptions& opts);

}  // namespace kqmc::cli
