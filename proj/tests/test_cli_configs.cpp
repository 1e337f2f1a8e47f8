#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinergy/io.hpp"
#include "spinergy/verification.hpp"

using namespace spinergy;
namespace fs = std::filesystem;

#ifndef SPINERGY_CLI_PATH
#define SPINERGY_CLI_PATH "spinergy"
#endif

namespace {
int run_cli(const std::string& args) {
    std::string cmd = std::string(SPINERGY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}
} // namespace

TEST_CASE("identity suite on a coarse ladder") {
    IdentitySuiteConfig cfg;
    cfg.grid_sizes = {16, 32, 64};
    cfg.samples_per_structure = 3;
    cfg.max_residual_finest = 1.0;   // coarse ladder: order is the content here
    auto tables = run_identity_suite(cfg);
    CHECK(tables.size() == 8);
    for (const auto& t : tables) {
        INFO(t.name);
        CHECK(t.passed);
    }
}

TEST_CASE("cli exit codes and determinism") {
    fs::path dir = fs::temp_directory_path() / "spinergy_cli_test";
    fs::create_directories(dir);

    SUBCASE("corrupt config exits 2") {
        fs::path bad = dir / "bad.json";
        std::ofstream(bad) << "{ not json";
        CHECK(run_cli("--config " + bad.string() + " counts") == 2);
    }
    SUBCASE("unknown keys are rejected with exit 2") {
        fs::path cfg = dir / "unknown.json";
        std::ofstream(cfg) << R"({"counts": {"gamma_max": 3, "bogus": 1}})";
        CHECK(run_cli("--config " + cfg.string() + " counts") == 2);
        fs::path cfg2 = dir / "unknown2.json";
        std::ofstream(cfg2) << R"({"mystery_section": {}})";
        CHECK(run_cli("--config " + cfg2.string() + " counts") == 2);
    }
    SUBCASE("insufficient refinement ladder exits 1") {
        fs::path cfg = dir / "short.json";
        std::ofstream(cfg) << R"({"verify": {"Ns": [8], "samples": 1}})";
        CHECK(run_cli("--config " + cfg.string() + " --out-dir " + (dir/"o1").string() + " verify") == 1);
    }
    SUBCASE("counts run is deterministic byte for byte") {
        fs::path cfg = dir / "counts.json";
        std::ofstream(cfg) << R"({"counts": {"gamma_max": 5}})";
        fs::path o1 = dir / "c1", o2 = dir / "c2";
        CHECK(run_cli("--config " + cfg.string() + " --out-dir " + o1.string() + " counts") == 0);
        CHECK(run_cli("--config " + cfg.string() + " --out-dir " + o2.string() + " counts") == 0);
        CHECK(slurp(o1/"spin_structure_counts.csv") == slurp(o2/"spin_structure_counts.csv"));
        CHECK(!slurp(o1/"spin_structure_counts.csv").empty());
    }
    SUBCASE("sphere subcommand reports closed forms") {
        CHECK(run_cli("--out-dir " + (dir/"sp").string() + " sphere") == 0);
    }
    SUBCASE("handle subcommand emits the table") {
        fs::path cfg = dir / "handle.json";
        std::ofstream(cfg) << R"({"handle": {"L": [1.0, 5.0], "double": true}})";
        CHECK(run_cli("--config " + cfg.string() + " --out-dir " + (dir/"h").string() + " handle") == 0);
        std::string csv = slurp(dir/"h"/"handle.csv");
        CHECK(csv.find("willmore_quadrature") != std::string::npos);
    }
}

TEST_CASE("number formatting is locale-free and stable") {
    CHECK(fmt(1.0) == "1");
    CHECK(fmt(0.1) == "0.10000000000000001");
    CHECK(fmt9(3.141592653589793) == "3.14159265");
}
