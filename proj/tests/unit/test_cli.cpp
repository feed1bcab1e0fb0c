#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qap/cli.hpp"
#include "qap/io.hpp"

using namespace qap;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch_dir() {
    fs::path p = fs::temp_directory_path() / "qap_cli_test";
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("classify exit codes") {
    Run a = run({"classify", "zeta3"});
    CHECK(a.code == kExitOk);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["verdict"]["membership"] == "Boundary");
    CHECK(j["extremality"]["verdict"] == "Extreme");

    Run b = run({"classify", "0.6,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05"});
    CHECK(b.code == kExitNotAP);
    CHECK(nlohmann::json::parse(b.out)["verdict"]["membership"] == "NotAP");

    Run c = run({"classify", "0.6,0.05,0.05,x,0.05,0.05,0.05,0.05,0.05"});
    CHECK(c.code == kExitError);
    CHECK(c.err.find("line 1, column 15") != std::string::npos);

    Run d = run({"classify", "uniform"});
    CHECK(d.code == kExitOk);
    CHECK(nlohmann::json::parse(d.out)["verdict"]["membership"] == "Interior");
}

TEST_CASE("classify reads spectrum files") {
    fs::path f = scratch_dir() / "s.json";
    std::ofstream(f) << to_json(zeta(5)).dump();
    Run r = run({"classify", f.string()});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["spectrum"] == to_json(zeta(5)));
}

TEST_CASE("sweep is tabular and byte-stable") {
    Run a = run({"sweep", "nu1", "--steps", "50"});
    CHECK(a.code == kExitOk);
    CHECK(count_lines(a.out) == 1 + 6 * 50);
    std::string header = a.out.substr(0, a.out.find('\n'));
    std::string expected;
    for (const auto& c : sweep_csv_columns()) expected += (expected.empty() ? "" : ",") + c;
    CHECK(header == expected);
    CHECK(a.out.find("NotAP") == std::string::npos);
    Run b = run({"sweep", "nu1", "--steps", "50"});
    CHECK(a.out == b.out);

    Run c = run({"sweep", "nu{2,4,3}", "--steps", "5", "--format", "json"});
    auto j = nlohmann::json::parse(c.out);
    CHECK(j.size() == 11);
    CHECK(j[0]["limit_lo"] == "zeta6");
}

TEST_CASE("output directory override") {
    fs::path dir = scratch_dir() / "out";
    fs::remove_all(dir);
    setenv(kOutputDirEnv, dir.c_str(), 1);
    Run r = run({"export", "--format", "json", "--steps", "3", "--out", "families.json"});
    unsetenv(kOutputDirEnv);
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(dir / "families.json"));
    auto j = nlohmann::json::parse(read_file((dir / "families.json").string()));
    CHECK(j.size() == 29 * 3 + 2 + 3);
}

TEST_CASE("oracle scan report") {
    fs::path spec = scratch_dir() / "z2.json";
    std::ofstream(spec) << to_json(zeta(2)).dump();
    fs::path out = scratch_dir() / "report.json";
    Run r = run({"oracle", "scan", "--spectrum", spec.string(), "--samples", "100", "--seed", "5", "--out",
                 out.string()});
    CHECK(r.code == kExitOk);
    auto j = nlohmann::json::parse(read_file(out.string()));
    for (const char* k : {"min_pt_eigenvalue", "argmin_seed", "argmin_index", "samples", "seed", "elapsed_seconds"})
        CHECK(j.contains(k));
    CHECK(j["samples"] == 100);
    CHECK(j["min_pt_eigenvalue"].get<double>() >= -1e-8);
}

TEST_CASE("limits and decompose") {
    Run l = run({"limits", "nu{2,4,3}"});
    CHECK(l.code == kExitOk);
    auto j = nlohmann::json::parse(l.out);
    CHECK(j.size() == 4);
    for (const auto& e : j) CHECK(e["distance"].get<double>() < 1e-3);

    Run d = run({"decompose", "0.07"});
    CHECK(d.code == kExitOk);
    CHECK(nlohmann::json::parse(d.out)["residual"].get<double>() <= 1e-12);
    CHECK(run({"decompose", "0.2"}).code == kExitError);
}

TEST_CASE("verify subsets and misconfiguration") {
    Run a = run({"verify", "--only", "limits"});
    CHECK(a.code == kExitOk);
    CHECK(count_lines(a.out) == 1);
    CHECK(a.out.rfind("[PASS] C4 limits", 0) == 0);

    Run b = run({"verify", "--only", "anchors", "--det-tol", "1e-2"});
    CHECK(b.code != kExitOk);
    CHECK(b.out.find("misconfigured") != std::string::npos);

    CHECK(run({"verify", "--only", "nonsense"}).code == kExitError);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code != 0);
    CHECK(run({"sweep", "--format", "xml"}).code != 0);
    CHECK(run({"sweep", "nu{9,9,9}"}).code == kExitError);
}
