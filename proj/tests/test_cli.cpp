#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "beliefgrid/config.hpp"
#include "beliefgrid/serialize.hpp"
#include "doctest.h"

#ifndef BGRID_BIN
#error "BGRID_BIN must name the CLI binary"
#endif

namespace fs = std::filesystem;
using beliefgrid::read_text_file;
using beliefgrid::write_text_file;

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string(BGRID_BIN) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

/// Fresh scratch directory per test, removed on destruction.
struct Scratch {
  fs::path dir;

  explicit Scratch(const std::string& name)
      : dir(fs::path("cli_scratch") / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string operator/(const std::string& leaf) const {
    return (dir / leaf).string();
  }
};

std::string fast_repair_config(const std::string& out_dir) {
  return "[model]\n"
         "kind = machine-repair\n"
         "discount = 0.3\n"
         "[quantization]\n"
         "n_list = 5,10\n"
         "[eval]\n"
         "seed = 7\n"
         "replications = 150\n"
         "horizon = 12\n"
         "initial_state = 1\n"
         "[output]\n"
         "directory = " +
         out_dir + "\n";
}

/// Strips the wall_ms column (the only non-reproducible field).
std::string mask_wall(const std::string& csv) {
  std::string out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string::npos) end = csv.size();
    const std::string line = csv.substr(start, end - start);
    const std::size_t cut = line.rfind(',');
    out += cut == std::string::npos ? line : line.substr(0, cut);
    out += '\n';
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("cli writes parseable example configs") {
  const Scratch s("examples");
  CHECK(run("example machine-repair --out " + s.dir.string()) == 0);
  CHECK(run("example population --out " + s.dir.string()) == 0);

  const auto mr =
      beliefgrid::parse_run_config(read_text_file(s / "machine-repair.ini"));
  CHECK_FALSE(mr.is_population());
  CHECK(mr.n_list.size() == 20);
  CHECK(mr.n_list.back() == 200);
  CHECK(mr.seed == 42);

  const auto pop =
      beliefgrid::parse_run_config(read_text_file(s / "population.ini"));
  CHECK(pop.is_population());
  CHECK(pop.n_list.size() == 10);
  CHECK(pop.n_list.back() == 720);

  CHECK(run("example no-such-model --out " + s.dir.string()) == 2);
}

TEST_CASE("solve, simulate and validate complete the round trip") {
  const Scratch s("roundtrip");
  const std::string cfg = s / "run.ini";
  write_text_file(cfg, fast_repair_config(s / "out"));

  CHECK(run("validate --config " + cfg) == 0);
  CHECK(run("solve --config " + cfg) == 0);
  CHECK(fs::exists(s / "out/solution.json"));
  CHECK(fs::exists(s / "out/model.json"));

  // solve under a multi-entry list targets the finest resolution
  const auto sol =
      beliefgrid::solution_from_json(read_text_file(s / "out/solution.json"));
  CHECK(sol.n == 10);
  CHECK(sol.grid_size == 11);

  CHECK(run("simulate --config " + cfg + " --solution " + s / "out/solution.json") == 0);
  CHECK(fs::exists(s / "out/rollout.json"));

  // byte-identical reruns
  const std::string first = read_text_file(s / "out/rollout.json");
  CHECK(run("simulate --config " + cfg + " --solution " + s / "out/solution.json") == 0);
  CHECK(read_text_file(s / "out/rollout.json") == first);
}

TEST_CASE("sweeps are reproducible outside the wall clock") {
  const Scratch s("sweepdet");
  const std::string cfg = s / "run.ini";
  write_text_file(cfg, fast_repair_config(s / "out"));

  CHECK(run("sweep --config " + cfg) == 0);
  const std::string csv1 = read_text_file(s / "out/sweep.csv");
  const std::string dat1 = read_text_file(s / "out/sweep.dat");

  CHECK(run("sweep --config " + cfg + " --jobs 4") == 0);
  const std::string csv2 = read_text_file(s / "out/sweep.csv");
  CHECK(mask_wall(csv1) == mask_wall(csv2));
  CHECK(read_text_file(s / "out/sweep.dat") == dat1);

  // lines: header plus one row per resolution
  std::size_t lines = 0;
  for (const char c : csv1)
    if (c == '\n') ++lines;
  CHECK(lines == 3);
}

TEST_CASE("configuration problems exit with code 2") {
  const Scratch s("badcfg");

  const std::string missing = s / "missing_discount.ini";
  write_text_file(missing,
                  "[model]\nkind = machine-repair\n[quantization]\nn = 4\n");
  CHECK(run("solve --config " + missing) == 2);

  const std::string typo = s / "typo.ini";
  write_text_file(typo,
                  "[model]\nkind = machine-repair\ndiscount = 0.3\n"
                  "oops = 1\n[quantization]\nn = 4\n");
  CHECK(run("validate --config " + typo) == 2);

  CHECK(run("solve --config " + s / "does_not_exist.ini") == 2);
  CHECK(run("solve --no-such-flag") == 2);
  CHECK(run("") == 2);  // a subcommand is required
}

TEST_CASE("numeric failures exit with code 3") {
  const Scratch s("numfail");
  const std::string cfg = s / "capped.ini";
  write_text_file(cfg,
                  "[model]\nkind = machine-repair\ndiscount = 0.3\n"
                  "[quantization]\nn = 4\n"
                  "[solver]\ntolerance = 1e-13\niteration_cap = 2\n"
                  "[output]\ndirectory = " + (s / "out") + "\n");
  CHECK(run("solve --config " + cfg) == 3);
}

TEST_CASE("simulate rejects mismatched solutions") {
  const Scratch s("mismatch");
  const std::string cfg = s / "run.ini";
  write_text_file(cfg, fast_repair_config(s / "out"));
  CHECK(run("solve --config " + cfg) == 0);

  // same solution, config that now describes the other model kind
  const std::string pop_cfg = s / "pop.ini";
  write_text_file(pop_cfg,
                  "[model]\nkind = population\ndiscount = 0.2\n"
                  "[quantization]\nn = 29\n[output]\ndirectory = " +
                      (s / "out2") + "\n");
  CHECK(run("simulate --config " + pop_cfg + " --solution " +
            s / "out/solution.json") == 2);

  // resolution override changes the grid size away from the stored one
  const std::string shrunk = s / "shrunk.ini";
  write_text_file(shrunk, fast_repair_config(s / "out3"));
  CHECK(run("solve --config " + shrunk + " --n 7") == 0);
  const auto sol =
      beliefgrid::solution_from_json(read_text_file(s / "out3/solution.json"));
  CHECK(sol.n == 7);
}

TEST_CASE("cli overrides beat the config file") {
  const Scratch s("override");
  const std::string cfg = s / "run.ini";
  write_text_file(cfg, fast_repair_config(s / "out"));

  CHECK(run("solve --config " + cfg + " --out " + s / "elsewhere") == 0);
  CHECK(fs::exists(s / "elsewhere/solution.json"));
  CHECK_FALSE(fs::exists(s / "out/solution.json"));
}
