// End-to-end tests of the fpp command-line tool: exit codes, CSV headers,
// JSON document shape, and byte-level determinism of numeric outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_bin() {
#ifdef FPP_CLI_BIN
    return FPP_CLI_BIN;
#else
    const char* bin = std::getenv("FPP_CLI_BIN");
    REQUIRE(bin != nullptr);
    return bin;
#endif
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + cli_bin() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "fpp-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_CASE("ball emits a headed CSV with one row per ball point") {
    auto dir = fresh_dir("ball");
    auto res = run("ball --radius 3 --law constant:1 --seed 7 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto rows = lines_of(slurp(dir / "ball.csv"));
    REQUIRE(!rows.empty());
    CHECK(rows[0] == "x1,x2,dist");
    // constant weights: the omega ball of radius 3 is the word ball, 25 points
    CHECK(rows.size() == 26);
    auto manifest = load_json(dir / "manifest.json");
    CHECK(manifest["command"] == "ball");
    CHECK(manifest["outputs"].is_array());
    CHECK(manifest["config_hash"].is_string());
    CHECK(manifest["seconds"].is_number());
}

TEST_CASE("avgdist writes a single summary row and is deterministic") {
    auto dir1 = fresh_dir("avg1");
    auto dir2 = fresh_dir("avg2");
    std::string args = "avgdist --x 0,0 --y 6,0 --law uniform:1:2 --seed 11 --replicas 12 --out ";
    CHECK(run(args + dir1.string()).exit_code == 0);
    CHECK(run(args + dir2.string(), "FPP_THREADS=3").exit_code == 0);
    auto a = slurp(dir1 / "avgdist.csv");
    CHECK(lines_of(a)[0] == "x,y,replicas,mean,std_error");
    CHECK(a == slurp(dir2 / "avgdist.csv")); // byte identical across thread counts
}

TEST_CASE("fluct produces the long-format exceedance table plus a fit summary") {
    auto dir = fresh_dir("fluct");
    auto res = run("fluct --radius 8 --replicas 40 --thresholds 0.5,1,2 --law uniform:1:2 "
                   "--seed 5 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto rows = lines_of(slurp(dir / "fluct.csv"));
    CHECK(rows[0] == "pair,x,y,word_dist,mean,sample_std,threshold,exceedance");
    CHECK(rows.size() == 1 + 2 * 3); // two pairs, three thresholds
    auto doc = load_json(dir / "fluct.json");
    CHECK(doc["replicas"] == 40);
    CHECK(doc["fit_c1"].is_number());
    CHECK(doc["fit_c2"].is_number());
}

TEST_CASE("sagstar on the exact L1 oracle finds the true midpoint") {
    auto dir = fresh_dir("sagstar");
    auto res = run("sagstar --from 0,0 --to 12,0 --lambda 0.5 --oracle l1 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "sagstar.json");
    CHECK(doc["z"] == json({6, 0}));
    CHECK(doc["eps"].get<double>() == doctest::Approx(0.0));
    CHECK(doc["oracle"] == "norm");
}

TEST_CASE("sag-seq reports points, per-step distances and deficiency") {
    auto dir = fresh_dir("sagseq");
    auto res = run("sag-seq --from 0,0 --to 32,0 --parts 4 --oracle word --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "sag-seq.json");
    REQUIRE(doc["points"].size() == 5);
    CHECK(doc["points"][2] == json({16, 0}));
    CHECK(doc["deficiency"].get<double>() == doctest::Approx(0.0));
    CHECK(doc["step_distances"].size() == 4);
    CHECK(doc["total"].get<double>() == doctest::Approx(32.0));
}

TEST_CASE("monotone reports its status and exits 0 unless the check fails") {
    auto dir = fresh_dir("monotone");
    auto res = run("monotone --radius 10 --profile-c 1.0 --oracle word --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "monotone.json");
    CHECK(doc["status"] == "holds");
    CHECK(doc["worst_defect"].get<double>() <= doc["allowance"].get<double>());
}

TEST_CASE("hull-check validates the identity on a symmetric cloud") {
    auto dir = fresh_dir("hull");
    auto res = run("hull-check --k \"1,0;0,1;-1,0;0,-1\" --n 3 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "hull-check.json");
    CHECK(doc["identity_holds"] == true);
    CHECK(doc["inequality_holds"] == true);
    CHECK(doc["support_gap"].get<double>() <= 1e-9);
}

TEST_CASE("cauchy defect on the word metric at equal radii is zero") {
    auto dir = fresh_dir("cauchy");
    auto res = run("cauchy --r1 8 --r2 8 --oracle word --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "cauchy.json");
    CHECK(doc["defect"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("shape emits a per-radius CSV and a JSON summary") {
    auto dir = fresh_dir("shape");
    auto res = run("shape --radii 4,8,12 --oracle word --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto rows = lines_of(slurp(dir / "shape.csv"));
    CHECK(rows[0] == "n,delta_in,delta_out,stderr");
    CHECK(rows.size() == 4);
    auto doc = load_json(dir / "shape.json");
    CHECK(doc["fit_c"].is_number());
    CHECK(doc["exponent"].is_number());
}

TEST_CASE("certify returns the full certificate document") {
    auto dir = fresh_dir("certify");
    auto res = run("certify --law atom:0.1:0:constant:1 --degree 4 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto doc = load_json(dir / "certify.json");
    CHECK(doc["status"] == "Valid");
    CHECK(doc["a_doubleprime"].get<double>() > 0.0);
    CHECK(doc["rho"].get<double>() < 1.0);
}

TEST_CASE("config file supplies defaults and flags override them") {
    auto dir = fresh_dir("config");
    std::ofstream cfg(dir / "run.cfg");
    cfg << "seed = 99\nlaw = constant:1\nreplicas = 4\n";
    cfg.close();
    auto res = run("avgdist --config " + (dir / "run.cfg").string() +
                   " --x 0,0 --y 5,0 --out " + dir.string());
    CHECK(res.exit_code == 0);
    auto rows = lines_of(slurp(dir / "avgdist.csv"));
    // constant weights: mean is exactly the word distance, std error zero
    CHECK(rows[1] == "\"0,0\",\"5,0\",4,5,0");
}

TEST_CASE("errors map to the documented exit codes") {
    auto dir = fresh_dir("errors");
    CHECK(run("").exit_code == 2);                       // missing subcommand
    CHECK(run("ball --no-such-flag").exit_code == 2);    // unknown flag
    CHECK(run("ball --law nonsense:1 --out " + dir.string()).exit_code == 2);
    CHECK(run("certify --law uniform:1:2 --degree 1 --out " + dir.string()).exit_code == 2);
    CHECK(run("shape --radii 8,4 --oracle word --out " + dir.string()).exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("reproduce --quick passes and its CSV is identical across thread counts") {
    auto dir1 = fresh_dir("rep1");
    auto dir2 = fresh_dir("rep2");
    auto r1 = run("reproduce --quick --out " + dir1.string(), "FPP_THREADS=1");
    CHECK(r1.exit_code == 0);
    auto r2 = run("reproduce --quick --out " + dir2.string(), "FPP_THREADS=8");
    CHECK(r2.exit_code == 0);
    auto csv1 = slurp(dir1 / "report.csv");
    CHECK(lines_of(csv1)[0] == "id,name,pass,metric,value");
    CHECK(csv1 == slurp(dir2 / "report.csv"));
}
