#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lve/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("verify-combinatorics runs clean and writes its outputs") {
  TempDir dir("lvecli_comb");
  const std::string out = (dir.path / "out").string();
  const int rc = lve::cli::run({"verify-combinatorics", "--out", out});
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "out" / "results.csv"));
  CHECK(fs::exists(dir.path / "out" / "manifest.json"));
  const std::string manifest = slurp(dir.path / "out" / "manifest.json");
  CHECK(manifest.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("unknown config keys are a usage error") {
  TempDir dir("lvecli_badkey");
  const fs::path cfg = dir.path / "cfg.json";
  std::ofstream(cfg) << R"({"verify_combinatorics": {"bogus_knob": 3}})";
  const int rc = lve::cli::run(
      {"verify-combinatorics", "--config", cfg.string(), "--out", (dir.path / "out").string()});
  CHECK(rc == 64);
}

TEST_CASE("missing config file is a usage error") {
  TempDir dir("lvecli_nocfg");
  const int rc = lve::cli::run({"verify-combinatorics", "--config",
                                (dir.path / "does_not_exist.json").string(), "--out",
                                (dir.path / "out").string()});
  CHECK(rc == 64);
}

TEST_CASE("results are byte-identical across worker counts") {
  TempDir dir("lvecli_threads");
  const fs::path cfg = dir.path / "cfg.json";
  std::ofstream(cfg) << R"({"two_point": {
    "a": 0.5, "L_box": 4.0, "lambda": [0.05], "separations": [0.5], "n_max": 1,
    "budget": {"s_nodes": 4, "outer_samples": 100, "inner_samples": [16, 4, 2], "max_order": 1}
  }})";
  const std::string out1 = (dir.path / "t1").string();
  const std::string out8 = (dir.path / "t8").string();
  const int rc1 =
      lve::cli::run({"two-point", "--config", cfg.string(), "--threads", "1", "--out", out1});
  const int rc8 =
      lve::cli::run({"two-point", "--config", cfg.string(), "--threads", "8", "--out", out8});
  CHECK(rc1 == 0);
  CHECK(rc8 == 0);
  CHECK(slurp(dir.path / "t1" / "results.csv") == slurp(dir.path / "t8" / "results.csv"));
}
