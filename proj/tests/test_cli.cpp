#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rmf/calibration.hpp"

namespace {

std::string bin() {
    const char* b = std::getenv("RMFLAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    std::string cmd = bin() + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

// numeric columns of the results schema: x,q,replicas,seed,mean,se,mom,lhs,rhs
std::string numeric_columns(const std::string& row) {
    auto cols = split(row, ',');
    REQUIRE(cols.size() == 17);
    return cols[5] + "|" + cols[6] + "|" + cols[8] + "|" + cols[9] + "|" + cols[10] + "|" +
           cols[11] + "|" + cols[12] + "|" + cols[13] + "|" + cols[14];
}

}  // namespace

TEST_CASE("oracle subcommand emits the exact moment") {
    std::remove("cli_oracle.csv");
    std::remove("cli_oracle.json");
    int rc = run("oracle --model steinhaus --x 4 --q 2 --out cli_oracle.csv");
    CHECK(rc == 0);
    auto lines = read_lines("cli_oracle.csv");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rfind("timestamp,build_id,config_hash", 0) == 0);
    CHECK(lines[1].find("exact_moment") != std::string::npos);
    CHECK(lines[1].find("exact=32") != std::string::npos);
    // JSON mirror exists
    std::ifstream js("cli_oracle.json");
    CHECK(js.good());
}

TEST_CASE("verify parseval exits zero") {
    std::remove("cli_verify.csv");
    int rc = run("verify --statement parseval --sigma 0.5 --out cli_verify.csv");
    CHECK(rc == 0);
    auto lines = read_lines("cli_verify.csv");
    REQUIRE(lines.size() >= 2);
    auto cols = split(lines[1], ',');
    CHECK(cols[15] == "1");  // pass column
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("bogus-subcommand") == 2);
    CHECK(run("verify --statement nonsense") == 2);
    CHECK(run("simulate --model martian --x 100") == 2);
}

TEST_CASE("capacity errors exit 1") {
    CHECK(run("oracle --model steinhaus --x 10000 --q 3 --out cli_cap.csv") == 1);
}

TEST_CASE("same seed, different thread budget: numeric columns identical") {
    std::remove("cli_t1.csv");
    std::remove("cli_t2.csv");
    CHECK(run("simulate --model steinhaus --x 1000 --q 1.5 --replicas 500 --seed 99 "
              "--threads 1 --out cli_t1.csv") == 0);
    CHECK(run("simulate --model steinhaus --x 1000 --q 1.5 --replicas 500 --seed 99 "
              "--threads 3 --out cli_t2.csv") == 0);
    auto a = read_lines("cli_t1.csv");
    auto b = read_lines("cli_t2.csv");
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    CHECK(numeric_columns(a[1]) == numeric_columns(b[1]));
}

TEST_CASE("config file merges under flags") {
    {
        std::ofstream cfg("cli_cfg.json");
        cfg << R"({"x": ["250"], "q": [1.0], "replicas": 200, "seed": 5})" << "\n";
    }
    std::remove("cli_cfg_a.csv");
    std::remove("cli_cfg_b.csv");
    CHECK(run("simulate --model steinhaus --config cli_cfg.json --out cli_cfg_a.csv") == 0);
    CHECK(run("simulate --model steinhaus --x 250 --q 1 --replicas 200 --seed 5 "
              "--out cli_cfg_b.csv") == 0);
    auto a = read_lines("cli_cfg_a.csv");
    auto b = read_lines("cli_cfg_b.csv");
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    CHECK(numeric_columns(a[1]) == numeric_columns(b[1]));

    // flags win over the config file
    std::remove("cli_cfg_c.csv");
    CHECK(run("simulate --model steinhaus --config cli_cfg.json --x 300 "
              "--out cli_cfg_c.csv") == 0);
    auto c = read_lines("cli_cfg_c.csv");
    REQUIRE(c.size() == 2);
    CHECK(split(c[1], ',')[5] == "300");
}

TEST_CASE("predict emits centers and slack exponents") {
    std::remove("cli_pred.csv");
    CHECK(run("predict --statement theorem1 --x 2^10 --x 2^12 --q 1.5 "
              "--out cli_pred.csv") == 0);
    auto lines = read_lines("cli_pred.csv");
    REQUIRE(lines.size() == 3);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cols = split(lines[i], ',');
        CHECK(cols[3] == "predict_theorem1");
        CHECK(std::stod(cols[10]) > 0.0);   // center
        CHECK(std::stod(cols[11]) == 2.25); // slack exponent q^2
    }
}

TEST_CASE("missing calibration file warns and uses defaults") {
    std::remove("cli_warn.csv");
    int rc = run("verify --statement prop3 --x 1000 --q 1 --replicas 64 "
                 "--calib does_not_exist.json --out cli_warn.csv");
    CHECK(rc == 0);
    auto err = read_lines("cli_stderr.txt");
    bool warned = false;
    for (const auto& l : err)
        if (l.find("default constants") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("fitted constants round trip and regression guard") {
    auto c = rmf::calibration::FittedConstants::defaults();
    c.set("theorem1_band", "steinhaus", 1.25);
    c.save("cli_calib_rt.json");
    auto d = rmf::calibration::FittedConstants::load("cli_calib_rt.json");
    CHECK_FALSE(d.loaded_defaults());
    CHECK(d.raw() == c.raw());

    CHECK_FALSE(d.regressed("theorem1_band", "steinhaus", 1.30));  // within 10%
    CHECK(d.regressed("theorem1_band", "steinhaus", 1.40));        // > 10% growth

    auto missing = rmf::calibration::FittedConstants::load("no_such_calib.json");
    CHECK(missing.loaded_defaults());
    std::remove("cli_calib_rt.json");

    // the frozen repository file parses and carries the acceptance keys
    const char* repo = std::getenv("RMFLAB_CALIB");
    REQUIRE(repo != nullptr);
    auto frozen = rmf::calibration::FittedConstants::load(repo);
    CHECK_FALSE(frozen.loaded_defaults());
    CHECK(frozen.find("theorem1_band", "steinhaus").has_value());
    CHECK(frozen.get("theorem1_band", "steinhaus") <= 3.0);  // the stated cap
}

TEST_CASE("seeds and config hash appear in every row") {
    std::remove("cli_prov.csv");
    CHECK(run("simulate --model rademacher --x 100 --q 1 --replicas 100 --seed 12345 "
              "--out cli_prov.csv") == 0);
    auto lines = read_lines("cli_prov.csv");
    REQUIRE(lines.size() == 2);
    auto cols = split(lines[1], ',');
    CHECK(cols[9] == "12345");          // seed column
    CHECK(cols[2].size() == 16);        // fnv64 hash hex
}
