#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"condvol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return condvol::cli::run(static_cast<int>(argv.size()), argv.data());
}

int run_cli_capture(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  const int code = run_cli(args);
  std::cout.rdbuf(old);
  out = captured.str();
  return code;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "condvol_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("constants command prints the reference values") {
  std::string out;
  REQUIRE(run_cli_capture({"constants", "--m", "2"}, out) == 0);
  const json j = json::parse(out);
  CHECK(j["m"] == 2);
  CHECK(std::abs(j["zs_total_volume"].get<double>() - 1.1292519280546666e-6) <
        1e-15);
  CHECK(std::abs(j["conjectured_v0"].get<double>() - 3.1624058034193272e-5) < 1e-13);
  CHECK(std::abs(j["x_cond_volume_hs_r0"].get<double>() - M_PI * M_PI / 2304.0) < 1e-15);
  CHECK(std::abs(j["x_total_volume_hs"].get<double>() - M_PI * M_PI / 5040.0) < 1e-15);
  CHECK(std::abs(j["conjectured_P_sep"].get<double>() - 8.0 / 33.0) < 1e-15);
  CHECK(j["x_psep"] == 0.4);

  // m = 3 evaluates in log space without overflow.
  REQUIRE(run_cli_capture({"constants", "--m", "3"}, out) == 0);
  const json j3 = json::parse(out);
  CHECK(j3["conjectured_v0"].get<double>() > 0.0);
  CHECK(std::isfinite(j3["zs_total_volume"].get<double>()));

  CHECK(run_cli({"constants", "--m", "1"}) == 2);
  CHECK(run_cli({"constants", "--m", "2", "--convention", "bogus"}) == 2);
}

TEST_CASE("xvol writes CSV and manifest, reruns are byte-identical") {
  const fs::path out1 = temp_file("xvol1.csv");
  const fs::path out2 = temp_file("xvol2.csv");
  const std::vector<std::string> base{"xvol",      "--r-grid", "0:1:0.5",
                                      "--samples", "20000",    "--seed",
                                      "9",         "--out",    ""};
  auto with_out = [&](const fs::path& p) {
    auto args = base;
    args.back() = p.string();
    return args;
  };
  REQUIRE(run_cli(with_out(out1)) == 0);
  REQUIRE(run_cli(with_out(out2)) == 0);

  const std::string csv = slurp(out1);
  CHECK(csv.rfind("r,v_mc,v_mc_err,v_analytic\n", 0) == 0);
  CHECK(count_lines(csv) == 4);  // header + three grid rows
  CHECK(csv == slurp(out2));

  const json manifest = json::parse(slurp(out1.string() + ".manifest.json"));
  CHECK(manifest["command"] == "xvol");
  CHECK(manifest["rng"] == "philox4x64-10");
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["parameters"]["samples"] == 20000);
  CHECK(manifest["stream_layout"]["chunk_size"].get<long long>() > 0);
  CHECK(manifest["csv_header"] == "r,v_mc,v_mc_err,v_analytic");
}

TEST_CASE("thread count does not change the data file") {
  const fs::path out1 = temp_file("vol_t1.csv");
  const fs::path out2 = temp_file("vol_t2.csv");
  REQUIRE(run_cli({"vol", "--r", "0.2", "--samples", "400000", "--seed", "4", "--threads",
                   "1", "--out", out1.string()}) == 0);
  REQUIRE(run_cli({"vol", "--r", "0.2", "--samples", "400000", "--seed", "4", "--threads",
                   "2", "--out", out2.string()}) == 0);
  CHECK(slurp(out1) == slurp(out2));
  const json manifest = json::parse(slurp(out1.string() + ".manifest.json"));
  CHECK(manifest["parameters"]["convention"] == "trace-exact");

  // The conjecture column carries V(0)(1-r^2)^6 in the requested convention.
  const std::string csv = slurp(out1);
  const auto last_comma = csv.find_last_of(',');
  const double v_conj = std::stod(csv.substr(last_comma + 1));
  CHECK(v_conj == doctest::Approx(3.1624058034193272e-5 * std::pow(0.96, 6))
                      .epsilon(1e-9));
}

TEST_CASE("psep command emits grid rows plus the analytic endpoint") {
  const fs::path out = temp_file("psep.csv");
  REQUIRE(run_cli({"psep", "--m", "2", "--r-grid", "0:0.8:0.4", "--samples", "2000",
                   "--seed", "5", "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("r,p,p_err,n_samples,n_hits,low_count\n", 0) == 0);
  CHECK(count_lines(csv) == 5);  // header + r in {0, 0.4, 0.8} + endpoint
  CHECK(csv.find("\n1,1,0,0,0,0\n") != std::string::npos);

  const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
  const double psep = manifest["results"]["P_sep"].get<double>();
  CHECK(psep > 0.1);
  CHECK(psep < 0.4);
  CHECK(manifest["results"]["label"] == "separable (PPT)");
}

TEST_CASE("hist command reports a fitted exponent") {
  const fs::path out = temp_file("hist.csv");
  REQUIRE(run_cli({"hist", "--m", "2", "--samples", "100000", "--bins", "60", "--seed",
                   "6", "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("r_lo,r_hi,count,envelope\n", 0) == 0);
  CHECK(count_lines(csv) == 61);
  const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["results"]["conjectured_exponent"] == 6);
  CHECK(std::abs(manifest["results"]["fitted_exponent"].get<double>() - 6.0) < 1.0);
}

TEST_CASE("psep-product command") {
  const fs::path out = temp_file("prod.csv");
  REQUIRE(run_cli({"psep-product", "--samples", "30000", "--bins", "10", "--seed", "7",
                   "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("r_lo,r_hi,n,n_ppt,p,p_err,unreliable\n", 0) == 0);
  CHECK(count_lines(csv) == 11);
  const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["results"]["global_ppt_fraction"].get<double>() > 0.0);
}

TEST_CASE("usage errors exit with code 2") {
  const std::string out = temp_file("unused.csv").string();
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"nonsense"}) == 2);
  CHECK(run_cli({"xvol", "--r-grid", "0.5:0.4:0.1", "--out", out}) == 2);  // empty grid
  CHECK(run_cli({"xvol", "--r-grid", "zzz", "--out", out}) == 2);
  CHECK(run_cli({"xvol", "--r", "0.2", "--r-grid", "0:1:0.5", "--out", out}) == 2);
  CHECK(run_cli({"xvol", "--r", "1.7", "--out", out}) == 2);
  CHECK(run_cli({"vol", "--m", "3", "--out", out}) == 2);
  CHECK(run_cli({"hist", "--bins", "5", "--out", out}) == 2);
  CHECK(run_cli({"psep", "--r", "1", "--out", out}) == 2);  // grid must stay below 1
  CHECK(run_cli({"xvol", "--samples", "0", "--out", out}) == 2);
  CHECK(run_cli({"xvol", "--convention", "bogus", "--r", "0", "--out", out}) == 2);
}

TEST_CASE("unwritable output exits with code 3") {
  CHECK(run_cli({"xvol", "--r", "0.5", "--samples", "100", "--out",
                 "/nonexistent-dir/xvol.csv"}) == 3);
}

TEST_CASE("the installed binary behaves like the library entry point") {
  const std::string binary = CONDVOL_CLI_BINARY;
  CHECK(std::system((binary + " constants --m 2 > /dev/null").c_str()) == 0);
  CHECK(std::system((binary + " --help > /dev/null").c_str()) == 0);
  const int bad = std::system((binary + " constants --m 1 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(bad) == 2);
}
