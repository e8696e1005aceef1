#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + std::string(KQMC_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kqmc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, CertifyMatchesClosedForm) {
  const auto r = run("certify --m 100 --d 3");
  ASSERT_EQ(r.code, 0);
  const auto doc = Json::parse(r.out);
  EXPECT_NEAR(doc["bound"].get<double>(), 16.0 / 23.0, 1e-15);
  EXPECT_EQ(doc["n"].get<long>(), 55330);
  EXPECT_EQ(doc["d_max"].get<long>(), 52);
}

TEST_F(Cli, PlanWithOverriddenConstant) {
  const auto r = run("--c-p 0.2 plan --eps 0.8 --d 1");
  ASSERT_EQ(r.code, 0);
  const auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["m"].get<long>(), 100);
  EXPECT_EQ(doc["n"].get<long>(), 55330);
}

TEST_F(Cli, PlanCsvHeader) {
  const auto r = run("plan --eps 0.5,0.25 --d 2 --csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "eps,d,m,n,bound");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(Cli, ConstantsFileAndEnvironment) {
  const auto file = write("c.json", R"({"c_p": 0.2, "C_p": 0.7})");
  auto r = run("--constants " + file + " plan --eps 0.8 --d 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["m"].get<long>(), 100);
  r = run("plan --eps 0.8 --d 1");
  EXPECT_EQ(Json::parse(r.out)["m"].get<long>(), 87);
  r = run("plan --eps 0.8 --d 1", "KQMC_DENSITY_FILE=" + file + " ");
  EXPECT_EQ(Json::parse(r.out)["m"].get<long>(), 100);
}

TEST_F(Cli, ExpsumSmallTCase) {
  const auto r = run("expsum --kind T --p 3 --k 1");
  ASSERT_EQ(r.code, 0);
  const auto doc = Json::parse(r.out);
  EXPECT_NEAR(doc["re"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(doc["im"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(doc["bound"].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(doc["n_terms"].get<long>(), 9);
}

TEST_F(Cli, ExpsumUnverifiedBelowDimension) {
  const auto r = run("expsum --kind S --p 2 --k 1,1,1");
  ASSERT_EQ(r.code, 0);
  const auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["bound_kind"], "unverified");
  EXPECT_TRUE(doc["bound"].is_null());
}

TEST_F(Cli, OutputIsDeterministic) {
  for (const char* args : {"expsum --kind P2 --m 50 --k 4,-9,2 --report",
                           "integrate --kind P1 --m 10,20 --builtin random --d 2 --seed 7",
                           "points --kind T --m 12 --d 3"}) {
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST_F(Cli, IntegrateCsvSchemaAndBound) {
  const auto r = run("integrate --kind P2 --m 20,50 --builtin cos-sum --d 3 --csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,m,n,d,estimate,exact,error,bound");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
    EXPECT_EQ(line.rfind("P2,", 0), 0u) << line;
  }
  EXPECT_EQ(rows, 2);
}

TEST_F(Cli, PointsRoundTripIntoFool) {
  const auto nodes = path("s7.txt");
  ASSERT_EQ(run("points --kind S --p 7 --d 2 --out " + nodes).code, 0);
  std::ifstream in(nodes);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# kind=S p=7 d=2 denom=49");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 49);

  const auto cert = path("cert.json");
  const auto gstar = path("g.json");
  ASSERT_EQ(std::system((std::string(KQMC_CLI_PATH) + " fool --nodes " + nodes + " --d 2 --gstar-out " + gstar +
                         " > " + cert)
                            .c_str()),
            0);
  const auto v = run("verify --cert " + cert + " --nodes " + nodes);
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(Json::parse(v.out)["ok"].get<bool>());

  const auto norm = run("norm --scheme f1 --fn " + gstar);
  ASSERT_EQ(norm.code, 0);
  EXPECT_LE(Json::parse(norm.out)["norm"].get<double>(), 1.0 + 1e-9);
}

TEST_F(Cli, VerifyRejectsTamperedCertificate) {
  const auto nodes = write("n.txt", "1/3 2/7\n1/2 1/5\n3/4 0/1\n");
  const auto cert = path("cert.json");
  ASSERT_EQ(run("fool --nodes " + nodes + " --d 2").code, 0);
  auto doc = Json::parse(run("fool --nodes " + nodes + " --d 2").out);
  doc["C"] = doc["C"].get<double>() * 1.5;
  std::ofstream(cert) << doc.dump();
  EXPECT_EQ(run("verify --cert " + cert + " --nodes " + nodes).code, 2);
  // Certificate for other nodes.
  const auto other = write("m.txt", "1/3 2/7\n1/2 1/5\n3/4 1/8\n");
  std::ofstream(cert) << Json::parse(run("fool --nodes " + nodes + " --d 2").out).dump();
  EXPECT_EQ(run("verify --cert " + cert + " --nodes " + other).code, 2);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("certify --m 10 --d 30").code, 1);
  EXPECT_EQ(run("plan --eps 1.5 --d 2").code, 1);
  EXPECT_EQ(run("expsum --kind S --p 9 --k 1").code, 1);
  EXPECT_EQ(run("norm --fn " + path("missing.json")).code, 1);
  EXPECT_EQ(run("norm --fn " + write("bad.json", "{\"d\": 2,")).code, 1);
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("certify --m 100").code, 64);
  EXPECT_EQ(run("plan --eps abc --d 2").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
