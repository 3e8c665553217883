// Acceptance gate: runs the full replication suite (checks 1-11) plus the
// cross-thread reproducibility comparison (check 12) and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fpp/suite.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cmd(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Criterion 12: `reproduce` twice, FPP_THREADS=1 vs FPP_THREADS=8; every
// numeric CSV column must be byte-identical.
bool reproducibility_check(std::string& detail) {
#ifdef FPP_CLI_BIN
    const char* bin = FPP_CLI_BIN;
#else
    const char* bin = std::getenv("FPP_CLI_BIN");
#endif
    if (!bin) {
        detail = "FPP_CLI_BIN not set";
        return false;
    }
    fs::path base = fs::temp_directory_path() / "fpp-acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path d1 = base / "t1", d2 = base / "t8";
    int rc1 = run_cmd(std::string("FPP_THREADS=1 ") + bin + " reproduce --quick --out " +
                      d1.string() + " > /dev/null 2>&1");
    int rc2 = run_cmd(std::string("FPP_THREADS=8 ") + bin + " reproduce --quick --out " +
                      d2.string() + " > /dev/null 2>&1");
    if (rc1 != 0 || rc2 != 0) {
        detail = "reproduce exited " + std::to_string(rc1) + " / " + std::to_string(rc2);
        return false;
    }
    std::string c1 = slurp(d1 / "report.csv");
    std::string c2 = slurp(d2 / "report.csv");
    if (c1.empty() || c1 != c2) {
        detail = "report.csv differs between FPP_THREADS=1 and FPP_THREADS=8";
        return false;
    }
    detail = "report.csv byte-identical across FPP_THREADS=1 and FPP_THREADS=8 (" +
             std::to_string(c1.size()) + " bytes)";
    return true;
}

} // namespace

int main() {
    fpp::SuiteOptions options;
    options.seed = 2026;
    options.quick = false;
    if (const char* quick = std::getenv("FPP_ACCEPTANCE_QUICK"); quick && quick[0] == '1') {
        options.quick = true;
    }
    auto checks = fpp::run_replication_suite(options);
    int failures = 0;
    int index = 1;
    for (const auto& check : checks) {
        std::printf("criterion %02d [%s] %s: %s (%.1fs)\n", index, check.id.c_str(),
                    check.pass ? "PASS" : "FAIL", check.detail.c_str(), check.seconds);
        if (!check.pass) ++failures;
        ++index;
    }
    std::string detail;
    bool repro = reproducibility_check(detail);
    std::printf("criterion 12 [R12] %s: %s\n", repro ? "PASS" : "FAIL", detail.c_str());
    if (!repro) ++failures;
    std::printf("%d/12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
