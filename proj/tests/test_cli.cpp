// End-to-end checks of the eitprop command-line interface: exit codes,
// emitted files, and the converge/report subcommands.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eit/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <string>

#ifndef EITPROP_PATH
#error "EITPROP_PATH must point at the eitprop binary"
#endif

using namespace eit;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(EITPROP_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("eit_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ScenarioConfig small_config() {
    ScenarioConfig cfg = preset("fig2");
    cfg.grid = {128, 13};
    cfg.outputs.susceptibility = false;
    return cfg;
}

} // namespace

TEST_CASE("validate: exit 0 for a good config, 1 for a bad one") {
    TempDir dir("validate");
    const fs::path good = dir.path / "good.json";
    save_config(small_config(), good);
    CHECK(run_cli("validate --config " + good.string()) == 0);

    ScenarioConfig bad = small_config();
    bad.probe.omega10 = Complex(5e-9, 0.0); // violates the weak-probe condition
    const fs::path bad_path = dir.path / "bad.json";
    save_config(bad, bad_path);
    CHECK(run_cli("validate --config " + bad_path.string()) == 1);

    CHECK(run_cli("validate --config " + (dir.path / "missing.json").string()) == 1);
}

TEST_CASE("run: emits tables and report.json; report reads them back") {
    TempDir dir("run");
    const fs::path cfg_path = dir.path / "config.json";
    save_config(small_config(), cfg_path);
    const fs::path out = dir.path / "out";

    CHECK(run_cli("run --scenario custom --config " + cfg_path.string() + " --out " +
                  out.string()) == 0);
    CHECK(fs::exists(out / "spectrum_z0.csv"));
    CHECK(fs::exists(out / "spectrum_z1.csv"));
    CHECK(fs::exists(out / "report.json"));

    CHECK(run_cli("report --out " + out.string()) == 0);
    CHECK(run_cli("report --out " + (dir.path / "empty").string()) == 1);
}

TEST_CASE("run: invalid config exits with 1") {
    TempDir dir("run_bad");
    ScenarioConfig bad = small_config();
    bad.grid.s_max = 6; // too small for the g = 5 control chirp
    const fs::path cfg_path = dir.path / "config.json";
    save_config(bad, cfg_path);
    CHECK(run_cli("run --scenario custom --config " + cfg_path.string() + " --out " +
                  (dir.path / "out").string()) == 1);
}

TEST_CASE("converge: nested truncations pass, writes the table when asked") {
    TempDir dir("converge");
    const fs::path cfg_path = dir.path / "config.json";
    save_config(small_config(), cfg_path);
    const fs::path out = dir.path / "out";

    CHECK(run_cli("converge --scenario custom --config " + cfg_path.string() +
                  " --truncations 13x128,15x128 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "convergence.csv"));

    CHECK(run_cli("converge --scenario custom --config " + cfg_path.string() +
                  " --truncations 13x128") == 1); // needs at least two settings
}
