// End-to-end checks of the CLI: exit codes, file outputs, reproducibility,
// and the manifest round trip.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SEMIDYN_CLI_PATH;
const std::string kData = SEMIDYN_DATA_DIR;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("semidyn_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("hypotheses exit codes: 0 satisfied, 2 violated, 1 parse error") {
    const auto out = fresh_dir("hyp");
    CHECK(run("hypotheses --gens " + kData + "/sl2_pair.gens --out " + (out / "a").string()) == 0);
    CHECK(run("hypotheses --gens " + kData + "/rot90.gens --out " + (out / "b").string()) == 2);

    const fs::path bad = out / "bad.gens";
    std::ofstream(bad) << "dim 2\ngen a\n2 1\n"; // truncated matrix
    CHECK(run("hypotheses --gens " + bad.string() + " --out " + (out / "c").string()) == 1);
    const fs::path empty = out / "empty.gens";
    std::ofstream(empty) << "";
    CHECK(run("hypotheses --gens " + empty.string() + " --out " + (out / "d").string()) == 1);
}

TEST_CASE("parse errors cite line numbers") {
    const auto out = fresh_dir("parse");
    const fs::path bad = out / "bad.gens";
    std::ofstream(bad) << "dim 2\ngen a\n2 1\n1 x\n";
    const std::string cmd = kCli + " hypotheses --gens " + bad.string() + " --out " +
                            (out / "r").string() + " 2> " + (out / "err.txt").string();
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    const std::string err = slurp(out / "err.txt");
    CHECK(err.find("line 4") != std::string::npos);
}

TEST_CASE("spectrum CSV carries the two flagship rows at max-len 1") {
    const auto out = fresh_dir("spec");
    CHECK(run("spectrum --gens " + kData + "/sl2_pair.gens --max-len 1 --out " + out.string()) == 0);
    const std::string csv = slurp(out / "spectrum.csv");
    CHECK(csv.find("a,0.96242365011920694") != std::string::npos);
    CHECK(csv.find("b,1.3169578969248166") != std::string::npos);
}

TEST_CASE("torus: rational input reports finite:true") {
    const auto out = fresh_dir("torus");
    CHECK(run("torus --gens " + kData + "/sl2_pair.gens --x0 1/5,2/5 --out " + out.string()) == 0);
    const json rep = json::parse(slurp(out / "torus.json"));
    CHECK(rep["finite"] == true);
    CHECK(rep["orbit_size"] == 24);
}

TEST_CASE("walk rejects n_steps <= burn_in") {
    const auto out = fresh_dir("walkarg");
    const int rc = run("walk --gens " + kData + "/sl2_pair.gens --steps 10 --burn-in 10 --out " +
                       out.string());
    CHECK(rc == 4);
}

TEST_CASE("identical configs give byte-identical outputs; threads change nothing") {
    const auto out1 = fresh_dir("rep1");
    const auto out2 = fresh_dir("rep2");
    const auto out4 = fresh_dir("rep4");
    const std::string base = "walk --gens " + kData +
                             "/sl2_pair.gens --steps 3000 --burn-in 100 --seed 42 --trials 64 --c 2.5";
    CHECK(run(base + " --out " + out1.string()) == 0);
    CHECK(run(base + " --out " + out2.string()) == 0);
    CHECK(run(base + " --threads 4 --out " + out4.string()) == 0);
    for (const char* f : {"occupation.csv", "contraction.csv"}) {
        CHECK(slurp(out1 / f) == slurp(out2 / f));
        CHECK(slurp(out1 / f) == slurp(out4 / f));
    }
    CHECK(slurp(out1 / "walk.json") == slurp(out4 / "walk.json"));
}

TEST_CASE("manifest round trip: re-running from the manifest reproduces the run") {
    const auto out1 = fresh_dir("man1");
    const auto out2 = fresh_dir("man2");
    CHECK(run("limitset --gens " + kData + "/sl2_pair.gens --max-len 9 --seed 5 --out " +
              out1.string()) == 0);
    const json m = json::parse(slurp(out1 / "manifest.json"));
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    // rebuild the command line from the manifest alone
    std::string cmd = m["command"].get<std::string>();
    cmd += " --gens " + m["gens"].get<std::string>();
    cmd += " --seed " + std::to_string(m["seed"].get<std::uint64_t>());
    cmd += " --threads " + std::to_string(m["threads"].get<int>());
    cmd += " --max-len " + std::to_string(m["params"]["max_len"].get<int>());
    cmd += " --tol " + fmt(m["params"]["tol"].get<double>());
    cmd += " --dedup-eps " + fmt(m["params"]["dedup_eps"].get<double>());
    cmd += " --scales " + m["params"]["scales"].get<std::string>();
    CHECK(run(cmd + " --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "limitset.csv") == slurp(out2 / "limitset.csv"));
    CHECK(slurp(out1 / "limitset.json") == slurp(out2 / "limitset.json"));
}

TEST_CASE("shell emits snapshots with decreasing Hausdorff distance") {
    const auto out = fresh_dir("shell");
    CHECK(run("shell --gens " + kData + "/sl2_pair.gens --v0 1,0 --t 4,8 --max-len 18 "
              "--c 2.6180339887498949 --out " + out.string()) == 0);
    const json rep = json::parse(slurp(out / "shell.json"));
    REQUIRE(rep["ts"].size() == 2);
    const double h4 = rep["ts"][0]["hausdorff_to_limitset"].get<double>();
    const double h8 = rep["ts"][1]["hausdorff_to_limitset"].get<double>();
    CHECK(h8 < h4);
    CHECK(fs::exists(out / "shell_t4.csv"));
    CHECK(fs::exists(out / "shell_t8.csv"));
}

TEST_CASE("manifest is written before outputs (diagnosable partial runs)") {
    const auto out = fresh_dir("manifirst");
    CHECK(run("spectrum --gens " + kData + "/sl2_pair.gens --max-len 2 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "manifest.json"));
    const json m = json::parse(slurp(out / "manifest.json"));
    CHECK(m["command"] == "spectrum");
    CHECK(m["version"].is_string());
}
