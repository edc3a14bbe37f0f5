#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scpulse/app/config.hpp"
#include "scpulse/app/output.hpp"
#include "scpulse/app/run.hpp"

using namespace scpulse;
using namespace scpulse::app;
namespace fs = std::filesystem;

namespace {

ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "scpulse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("scpulse_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_quiet(const CliConfig& cfg, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("defaults") {
  const ParseResult r = parse({"solve"});
  REQUIRE(r.config);
  const CliConfig& c = *r.config;
  CHECK(c.command == Command::solve);
  CHECK(c.profile.family == ProfileFamily::sine);
  CHECK(c.profile.amplitudes == std::vector<double>{0.1});
  CHECK(c.n == 256);
  CHECK(c.eulerian_size() == 256);
  CHECK(c.dt == 5e-4);
  CHECK(c.t_end == 1.0);
  CHECK(c.snapshots == 11);
  CHECK(c.scheme == Scheme::rk4);
  CHECK_FALSE(c.drift_guard);
  CHECK(c.labels().size() == 16);
  CHECK(c.labels()[1] == 1.0 / 16);
}

TEST_CASE("flags") {
  const ParseResult r = parse({"trace", "--init", "multisine", "--amplitude", "0.1,0.05", "--mode", "1,3",
                               "--n", "128", "--m", "64", "--dt", "1e-3", "--t-end", "0.5", "--snapshots", "6",
                               "--augmented", "--scheme", "heun", "--drift-guard", "1e-5", "--xi", "0,0.5",
                               "--tol", "1e-10", "--out", "somewhere"});
  REQUIRE(r.config);
  const CliConfig& c = *r.config;
  CHECK(c.command == Command::trace);
  CHECK(c.profile.family == ProfileFamily::multisine);
  CHECK(c.profile.modes == std::vector<int>{1, 3});
  CHECK(c.eulerian_size() == 64);
  CHECK(c.augmented);
  CHECK(c.scheme == Scheme::heun);
  CHECK(*c.drift_guard == 1e-5);
  CHECK(c.labels() == std::vector<double>{0.0, 0.5});
  CHECK(c.out_dir == "somewhere");
  CHECK(c.run_config().output_times.size() == 6);
}

TEST_CASE("multisine modes default to 1, 2, ...") {
  const ParseResult r = parse({"solve", "--init", "multisine", "--amplitude", "0.1,0.05,0.02"});
  REQUIRE(r.config);
  CHECK(r.config->profile.modes == std::vector<int>{1, 2, 3});
}

TEST_CASE("config errors exit with 2") {
  CHECK(parse({"explode"}).exit_code == 2);
  CHECK(parse({}).exit_code == 2);
  CHECK(parse({"solve", "--amplitude", "-0.1"}).exit_code == 2);
  CHECK(parse({"solve", "--mode", "0"}).exit_code == 2);
  CHECK(parse({"solve", "--n", "4"}).exit_code == 2);
  CHECK(parse({"solve", "--init", "gauss"}).exit_code == 2);
  CHECK(parse({"solve", "--amplitude", "0.1,0.2"}).exit_code == 2);
  CHECK(parse({"solve", "--snapshots", "1"}).exit_code == 2);
  CHECK(parse({"solve", "--help"}).exit_code == 0);
  CHECK_FALSE(parse({"solve", "--help"}).config);
}

TEST_CASE("config file keys match flags and flags win") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  const fs::path file = dir / "run.toml";
  std::ofstream(file) << "command = \"compare\"\nn = 128\ndt = 0.002\nt-end = 0.25\namplitude = [0.05]\n";
  const ParseResult r = parse({"--config", file.string(), "--n", "64"});
  REQUIRE(r.config);
  CHECK(r.config->command == Command::compare);
  CHECK(r.config->n == 64);
  CHECK(r.config->dt == 0.002);
  CHECK(r.config->t_end == 0.25);
  CHECK(r.config->profile.amplitudes == std::vector<double>{0.05});
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.0) == "0");
  CHECK(short_double(0.0625) == "0.0625");
  CHECK(short_double(0.1) == "0.1");
}

TEST_CASE("solve on zero data writes zero-filled outputs") {
  const fs::path dir = scratch("zero");
  const ParseResult r = parse({"solve", "--init", "zero", "--n", "64", "--dt", "1e-3", "--t-end", "0.1",
                               "--out", dir.string()});
  REQUIRE(r.config);
  CHECK(run_quiet(*r.config) == 0);
  for (int k = 0; k < 11; ++k) {
    const std::string idx = std::to_string(k);
    CHECK(first_line(dir / ("lagrangian_t" + idx + ".csv")) == "xi,y,U,V,W,Q");
    CHECK(first_line(dir / ("eulerian_t" + idx + ".csv")) == "x,u,ux,ux_valid");
  }
  CHECK(first_line(dir / "conserved.csv") == "t,E_tilde,F_tilde,inv_WV,inv_yxi,inv_Uxi,minV,minQ");
  std::ifstream in(dir / "eulerian_t10.csv");
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0,1");
  }
  CHECK(rows == 64);
  CHECK(fs::exists(dir / "meta.json"));
}

TEST_CASE("meta reports h, F0 and the theorem flag") {
  const fs::path dir = scratch("meta");
  const ParseResult r = parse({"solve", "--amplitude", "0.1", "--n", "64", "--dt", "1e-3", "--t-end", "0.01",
                               "--out", dir.string()});
  REQUIRE(r.config);
  REQUIRE(run_quiet(*r.config) == 0);
  const auto meta = nlohmann::json::parse(slurp(dir / "meta.json"));
  CHECK(meta["h"].get<double>() == doctest::Approx(0.1973920880).epsilon(1e-10));
  CHECK(meta["theorem_scope"].get<bool>());
  CHECK(meta["config"]["n"].get<int>() == 64);
  CHECK(meta.contains("wall_time_s"));
  CHECK(meta.contains("version"));
}

TEST_CASE("h = 1 exits with 3 and names the error") {
  const ParseResult r = parse({"solve", "--amplitude", "0.2250790790", "--out", scratch("h1").string()});
  REQUIRE(r.config);
  std::string err;
  CHECK(run_quiet(*r.config, &err) == 3);
  CHECK(err.rfind("HNearOne", 0) == 0);
}

TEST_CASE("drift guard exits with 3") {
  const ParseResult r = parse({"solve", "--n", "64", "--t-end", "0.01", "--drift-guard", "1e-30", "--out",
                               scratch("guard").string()});
  REQUIRE(r.config);
  std::string err;
  CHECK(run_quiet(*r.config, &err) == 3);
  CHECK(err.rfind("DriftExceeded", 0) == 0);
}

TEST_CASE("compare writes the difference series") {
  const fs::path dir = scratch("compare");
  const ParseResult r = parse({"compare", "--amplitude", "0.05", "--n", "128", "--dt", "1e-3", "--t-end", "0.2",
                               "--snapshots", "5", "--out", dir.string()});
  REQUIRE(r.config);
  REQUIRE(run_quiet(*r.config) == 0);
  std::ifstream in(dir / "diff.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,linf_u,linf_ux");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const double linf_u = std::stod(line.substr(line.find(',') + 1));
    CHECK(linf_u <= 1e-6);
  }
  CHECK(rows == 5);
}

TEST_CASE("trace writes one file per launch point") {
  const fs::path dir = scratch("trace");
  const ParseResult r = parse({"trace", "--n", "64", "--dt", "1e-3", "--t-end", "0.1", "--snapshots", "11",
                               "--xi", "0,0.0625,0.5", "--out", dir.string()});
  REQUIRE(r.config);
  REQUIRE(run_quiet(*r.config) == 0);
  for (const char* name : {"trace_0.csv", "trace_0.0625.csv", "trace_0.5.csv"}) {
    CHECK(first_line(dir / name) == "t,beta,y_char,ode_residual");
  }
}

TEST_CASE("identical runs are byte identical") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  for (const fs::path& d : {a, b}) {
    const ParseResult r = parse({"solve", "--n", "64", "--dt", "1e-3", "--t-end", "0.2", "--out", d.string()});
    REQUIRE(r.config);
    REQUIRE(run_quiet(*r.config) == 0);
  }
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().filename() == "meta.json") continue;
    ++files;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(files == 23);
}

TEST_CASE("the executable maps outcomes to exit codes") {
  const char* bin = std::getenv("SCPULSE_BIN");
  if (!bin) return;
  const fs::path dir = scratch("exe");
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string(bin) + " " + args + " --out " + dir.string() + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("solve --init zero --n 64 --dt 1e-3 --t-end 0.1") == 0);
  CHECK(status("solve --init sine --amplitude 0.2250790790") == 3);
  CHECK(status("solve --n 3") == 2);
  CHECK(status("nonsense") == 2);
}
