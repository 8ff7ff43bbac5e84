// Licensed under the Apache License 2.0 (see LICENSE file).
//
// Runs the tvop executable as a subprocess and inspects exit codes and files.

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "subprocess.hpp"

namespace fs = std::filesystem;

namespace {

using Run = tvop::testing::RunResult;

Run run(const std::string& args) { return tvop::testing::run_program(TVOP_CLI_PATH, args); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("tvop_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string fixture(const std::string& name) { return std::string(TVOP_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("generate is deterministic per seed") {
    TempDir dir("gen");
    REQUIRE(run("generate --n 30 --seed 4 --quiet --out " + dir.str() + " --name a.json").code == 0);
    REQUIRE(run("generate --n 30 --seed 4 --quiet --out " + dir.str() + " --name b.json").code == 0);
    REQUIRE(run("generate --n 30 --seed 5 --quiet --out " + dir.str() + " --name c.json").code == 0);
    CHECK(slurp(dir.path / "a.json") == slurp(dir.path / "b.json"));
    CHECK(slurp(dir.path / "a.json") != slurp(dir.path / "c.json"));
    const auto doc = nlohmann::json::parse(slurp(dir.path / "a.json"));
    CHECK(doc["vertices"].size() == 31);
    CHECK(fs::exists(dir.path / "a.json"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("generate --quiet").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("generate --n 5 --profit nonsense --quiet --out /tmp").code == 2);
    CHECK(run("generate --n 5 --dt 0 --quiet --out /tmp").code == 2);
}

TEST_CASE("solve, check and plot round trip") {
    TempDir dir("solve");
    const std::string out = " --out " + dir.str();
    REQUIRE(run("generate --n 40 --seed 2 --quiet --name inst.json" + out).code == 0);
    const std::string inst = (dir.path / "inst.json").string();
    const auto solve = run("solve --instance " + inst + out);
    REQUIRE(solve.code == 0);
    CHECK(solve.output.find("solver=dp") != std::string::npos);
    CHECK(solve.output.find("profit=") != std::string::npos);
    const std::string route = (dir.path / "route_dp.json").string();
    REQUIRE(fs::exists(route));
    CHECK(run("check --route " + route + " --instance " + inst + out).code == 0);

    REQUIRE(run("plotdata --route " + route + " --instance " + inst + " --quiet" + out).code == 0);
    std::istringstream csv(slurp(dir.path / "plot.csv"));
    std::string line;
    int rows = 0;
    std::getline(csv, line);
    CHECK(line == "id,x,y,weight,order,t");
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 41);

    // Inflate the reported profit.
    auto doc = nlohmann::json::parse(slurp(route));
    doc["total_profit"] = doc["total_profit"].get<double>() + 5.0;
    const auto bad = dir.path / "bad.json";
    std::ofstream(bad) << doc.dump();
    const auto check = run("check --route " + bad.string() + " --instance " + inst + out);
    CHECK(check.code == 3);
    CHECK(check.output.find("PROFIT") != std::string::npos);
    CHECK(run("plotdata --route " + bad.string() + " --instance " + inst + " --quiet" + out).code == 3);

    // Two stops swapped out of order break the hop spans.
    doc = nlohmann::json::parse(slurp(route));
    if (doc["stops"].size() >= 3) {
        std::swap(doc["stops"][1], doc["stops"][2]);
        std::ofstream(bad) << doc.dump();
        const auto swapped = run("check --route " + bad.string() + " --instance " + inst + out);
        CHECK(swapped.code == 3);
        CHECK(swapped.output.find("EDGE") != std::string::npos);
    }
}

TEST_CASE("destinations and no-route") {
    TempDir dir("dest");
    const std::string out = " --out " + dir.str() + " --quiet";
    const std::string inst = fixture("three_vertex.json");
    CHECK(run("solve --instance " + inst + " --destination 2" + out).code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir.path / "route_dp.json"));
    CHECK(doc["stops"].back()["vertex"] == 2);
    // Vertex 1 alone is worth more, yet the fixed destination wins out.
    CHECK(run("solve --instance " + inst + " --destination none" + out).code == 0);
    CHECK(run("solve --instance " + inst + " --destination 9" + out).code == 2);

    REQUIRE(run("generate --n 3 --T 10 --box 100 200 100 200 --start 0 0 --seed 1 --name far.json" + out).code == 0);
    const auto far = run("solve --instance " + (dir.path / "far.json").string() + " --destination 2 --out " +
                         dir.str());
    CHECK(far.code == 4);
    CHECK(far.output.find("NOROUTE") != std::string::npos);
}

TEST_CASE("oracle cap exits 5") {
    TempDir dir("cap");
    const std::string out = " --out " + dir.str() + " --quiet";
    REQUIRE(run("generate --n 11 --seed 1 --name big.json" + out).code == 0);
    const std::string big = (dir.path / "big.json").string();
    CHECK(run("solve --instance " + big + " --solver oracle-discrete" + out).code == 5);
    CHECK(run("solve --instance " + big + " --solver oracle-discrete --oracle-cap 13" + out).code == 5);  // above the hard limit
    CHECK(run("emit-mip --instance " + big + " --cap 10" + out).code == 5);
}

TEST_CASE("compare writes one row per seed") {
    TempDir dir("cmp");
    const auto r = run("compare --n 6 --T 100 --seeds 0..3 --jobs 2 --quiet --out " + dir.str());
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(dir.path / "compare.csv"));
    std::string header, line;
    std::getline(csv, header);
    CHECK(header.rfind("seed,n,dp,z_discrete,z_continuous,cog_dynamic,cog_static", 0) == 0);
    int rows = 0;
    while (std::getline(csv, line)) {
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
        ++rows;
    }
    CHECK(rows == 4);
    CHECK(fs::exists(dir.path / "compare_summary.csv"));

    // Thread count does not change results.
    TempDir single("cmp1");
    REQUIRE(run("compare --n 6 --T 100 --seeds 0..3 --jobs 1 --quiet --out " + single.str()).code == 0);
    auto without_timing = [](const std::string& text) {
        // Drop the last column (wall time).
        std::istringstream in(text);
        std::string out, l;
        while (std::getline(in, l)) out += l.substr(0, l.rfind(',')) + "\n";
        return out;
    };
    CHECK(without_timing(slurp(dir.path / "compare.csv")) == without_timing(slurp(single.path / "compare.csv")));
}

TEST_CASE("emit-mip, ingest, sweep-dt and st-dump produce their files") {
    TempDir dir("misc");
    const std::string out = " --out " + dir.str() + " --quiet";
    REQUIRE(run("emit-mip --instance " + fixture("three_vertex.json") + out).code == 0);
    const auto lp = slurp(dir.path / "model.lp");
    CHECK(lp.find("Maximize") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);

    REQUIRE(run("ingest --events " + fixture("events_two_blobs.csv") + " --k 2 --T 100 --bin-width 10 --seed 3" + out)
                .code == 0);
    const auto model = nlohmann::json::parse(slurp(dir.path / "region_model.json"));
    CHECK(model["k"] == 2);
    const auto region = nlohmann::json::parse(slurp(dir.path / "region_instance.json"));
    CHECK(region["vertices"].size() == 3);
    CHECK(run("ingest --events " + fixture("events_two_blobs.csv") + " --k 2 --T 100 --bin-width 2.5" + out).code ==
          2);

    REQUIRE(run("sweep-dt --ns 10 20 --dts 0.5 1 --seeds 0..0" + out).code == 0);
    std::istringstream sweep(slurp(dir.path / "sweep_dt.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(sweep, line)) ++rows;
    CHECK(rows == 3);
    CHECK(fs::exists(dir.path / "sweep_dt_ms.csv"));

    const auto dump = run("st-dump --instance " + fixture("three_vertex.json"));
    REQUIRE(dump.code == 0);
    int edges = 0;
    for (char c : dump.output) edges += c == '\n';
    CHECK(edges >= 17);
}
