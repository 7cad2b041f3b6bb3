#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "quench/cli.hpp"

using namespace quench;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "quench_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("version and help") {
  const Run v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(kProgramName) != std::string::npos);
  const Run h = run({"strip", "--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("--kappa") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitParameter);
  CHECK(run({"bogus"}).code == kExitParameter);
  CHECK(run({"front1d", "--c", "1", "--nonsense", "3"}).code == kExitParameter);
  CHECK(run({"front1d", "--c", "1", "--continue", "--M", "10"}).code == kExitParameter);
  CHECK(run({"strip", "--c", "5", "--kappa", "7"}).code == kExitParameter);
  CHECK(run({"strip", "--c", "1", "--kappa", "3"}).code == kExitParameter);
  CHECK(run({"periodic", "--amplitude", "1.5"}).code == kExitParameter);
  CHECK(run({"hinfty", "--c", "2.5"}).code == kExitParameter);
  CHECK(run({"front1d", "--config", "/nonexistent/cfg.json"}).code == kExitParameter);
}

TEST_CASE("front1d writes a CSV with a provenance header") {
  const fs::path f = scratch() / "f.csv";
  const Run r = run({"front1d", "--c", "1.0", "--M", "20", "--L", "20", "--h", "0.05", "--out", f.string()});
  REQUIRE(r.code == 0);
  const std::string text = slurp(f);
  CHECK(text.rfind("# quench-patterns front1d --L 20 --M 20 --c 1 --h 0.050000000000000003 --tol 1e-10\nx,u\n", 0) == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["M_final"] == 20.0);

  // Identical argv, identical bytes.
  const fs::path g = scratch() / "g.csv";
  REQUIRE(run({"front1d", "--c", "1.0", "--M", "20", "--L", "20", "--h", "0.05", "--out", g.string()}).code == 0);
  CHECK(slurp(g) == text);
}

TEST_CASE("config files supply flags and the command line overrides them") {
  const fs::path cfg = scratch() / "cfg.json";
  std::ofstream(cfg) << R"({"c": 0.5, "M": 15, "L": 15, "h": 0.1})";
  const Run a = run({"front1d", "--config", cfg.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("# quench-patterns front1d --L 15 --M 15 --c 0.5 --h 0.10000000000000001", 0) == 0);
  const Run b = run({"front1d", "--c", "0.7", "--config", cfg.string()});
  REQUIRE(b.code == 0);
  CHECK(b.out.rfind("# quench-patterns front1d --L 15 --M 15 --c 0.69999999999999996", 0) == 0);
  std::ofstream(cfg) << "[1, 2]";
  CHECK(run({"front1d", "--config", cfg.string()}).code == kExitParameter);
}

TEST_CASE("dichotomy prints a JSON verdict") {
  const Run r = run({"dichotomy", "--c", "1.0", "--h", "0.05"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"c", "verdict", "wake_amplitude", "M_final", "L_final"}) CHECK(j.contains(k));
  CHECK(j["verdict"] == "nontrivial");
  const Run c = run({"dichotomy", "--c", "2.0"});
  CHECK(c.code == kExitInconclusive);
  CHECK(nlohmann::json::parse(c.out)["verdict"] == "inconclusive");
}

TEST_CASE("two-dimensional outputs use x,y,u") {
  const Run s = run({"strip", "--c", "1", "--kappa", "6", "--M", "6", "--L", "6", "--h", "0.2"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("\nx,y,u\n") != std::string::npos);
  const Run v = run({"subsolution", "--c", "1.9", "--d", "2.05", "--alpha", "0.5", "--kappa", "6.5",
                     "--mode", "nonexist", "--M", "30", "--h", "0.2"});
  REQUIRE(v.code == 0);
  CHECK(v.out.find("# quench-patterns subsolution --L 10 --M 30 --alpha 0.5 ") == 0);
  CHECK(run({"subsolution", "--c", "0.5", "--d", "1.9", "--alpha", "0.5", "--kappa", "6.5",
             "--mode", "sideways"}).code == kExitParameter);
}

TEST_CASE("evolve writes numbered snapshots") {
  const fs::path dir = scratch() / "evolve";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path f = dir / "traj.csv";
  const Run r = run({"evolve", "--frame", "comoving", "--c", "1", "--dim", "1", "--t-end", "2",
                     "--dt", "0.1", "--snapshot-every", "5", "--out", f.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(f));
  CHECK(fs::exists(dir / "traj_000001.csv"));
  CHECK(fs::exists(dir / "traj_000004.csv"));
  CHECK_FALSE(fs::exists(dir / "traj_000005.csv"));
  CHECK(nlohmann::json::parse(r.out)["steps"] == 20);
  const Run two = run({"evolve", "--frame", "lab", "--c", "1", "--dim", "2", "--t-end", "1",
                       "--dt", "0.5", "--h", "0.25", "--M", "5", "--L", "5", "--initial", "bump"});
  CHECK(two.code == 0);
}

TEST_CASE("sweep without solvers") {
  const Run r = run({"sweep", "--c-min", "1", "--c-max", "1.9", "--c-steps", "2", "--kappa-min", "6.283185307179586",
                     "--kappa-max", "6.283185307179586", "--kappa-steps", "1", "--kappa-inf"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("c,kappa,P,predicted,measured,wake_amplitude\n") != std::string::npos);
  CHECK(r.out.find("1.8999999999999999,inf,0.90249999999999997,exists,not_run,nan") != std::string::npos);
  CHECK(run({"sweep", "--c-max", "4"}).code == kExitParameter);
}
