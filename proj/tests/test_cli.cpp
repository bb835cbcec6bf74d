#include "cli.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>

using namespace dimer;
using namespace support;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Runs from the source tree so relative fixture paths in the manifest resolve.
struct InSourceDir {
    fs::path saved = fs::current_path();
    InSourceDir() { fs::current_path(fs::path(DIMER_FIXTURE_DIR).parent_path()); }
    ~InSourceDir() { fs::current_path(saved); }
};

std::string transcript(const Run &r) {
    std::string s = r.out;
    if (!r.err.empty())
        s += "[stderr]\n" + r.err;
    s += "[exit " + std::to_string(r.code) + "]\n";
    return s;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate c3") {
    auto r = run({"validate", fixture_path("c3.dimer")});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "OK\n");
}

TEST_CASE("analyze conif2 quotes the printed algebras") {
    auto r = run({"analyze", fixture_path("conif2.dimer"), "--contract", "auto", "--letters"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("S = k[x^2, y^2, xy, z]") != std::string::npos);
    CHECK(r.out.find("R = k + (x^2, y^2, xy)S") != std::string::npos);
}

TEST_CASE("find-contraction on perm2") {
    auto r = run({"find-contraction", fixture_path("perm2.dimer")});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "no contraction to a cancellative dimer algebra exists\n");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"validate"}).code == cli::kExitUsage);
    CHECK(run({"pairs", fixture_path("c3.dimer"), "--bound", "0"}).code == cli::kExitUsage);
    CHECK(run({"contract", fixture_path("c3.dimer"), "--arrows", "a"}).code == cli::kExitUsage);
    CHECK(run({"analyze", fixture_path("c3.dimer"), "--contract", "1,x"}).code == cli::kExitUsage);
    CHECK(run({"validate", fixture_path("missing.dimer")}).code == cli::kExitFile);
    CHECK(run({"validate", fixture_path("invalid/dangling_arrow.dimer")}).code == cli::kExitFile);
    CHECK(run({"validate", fixture_path("invalid/c3_short_face.dimer")}).code == cli::kExitFailure);
    CHECK(run({"contract", fixture_path("c3.dimer"), "--arrows", "0"}).code == cli::kExitFailure);
    CHECK(run({"analyze", fixture_path("perm2.dimer")}).code == cli::kExitCaveat);
    CHECK(run({"find-contraction", fixture_path("isor.dimer")}).code == cli::kExitCaveat);
    // the auto contraction of ex1 is not the drawn one, so its letters do not fit
    CHECK(run({"analyze", fixture_path("ex1.dimer"), "--letters"}).code == cli::kExitFile);
    CHECK(run({"analyze", fixture_path("conif2_target.dimer"), "--letters"}).code == cli::kExitFile);
}

TEST_CASE("json output is stable and versioned") {
    const std::vector<std::vector<std::string>> cases = {
        {"validate", fixture_path("conif2.dimer"), "--json"},
        {"matchings", fixture_path("isor.dimer"), "--json"},
        {"pairs", fixture_path("perm2.dimer"), "--json"},
        {"contract", fixture_path("ex1.dimer"), "--arrows", "4,5", "--json"},
        {"find-contraction", fixture_path("c3.dimer"), "--json"},
        {"analyze", fixture_path("ex3.dimer"), "--contract", "10", "--letters", "--json"},
    };
    for (const auto &args : cases) {
        CAPTURE(args[0]);
        auto r = run(args);
        REQUIRE(r.code == cli::kExitOk);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["schema"] == cli::kSchema);
        CHECK(j["command"] == args[0]);
        CHECK(j.dump(2) + "\n" == r.out);
        CHECK(run(args).out == r.out);
    }
}

TEST_CASE("contract output parses as a quiver") {
    auto r = run({"contract", fixture_path("conif2.dimer"), "--arrows", "6"});
    REQUIRE(r.code == cli::kExitOk);
    Quiver t = parse_quiver(r.out);
    CHECK(write_quiver(t) == write_quiver(contract(load("conif2"), {6}).target));
}

TEST_CASE("seed fixtures") {
    fs::path dir = fs::temp_directory_path() / "dimer-seed-test";
    fs::remove_all(dir);
    auto r = run({"--seed-fixtures", dir.string()});
    REQUIRE(r.code == cli::kExitOk);
    int files = 0;
    for (const auto &[name, text] : cli::embedded_fixtures()) {
        CAPTURE(name);
        CHECK(read_file((dir / name).string()) == text);
        CHECK(read_file(fixture_path(name)) == text);
        ++files;
    }
    CHECK(files >= 25);
    fs::remove_all(dir);
}

TEST_CASE("golden outputs") {
    InSourceDir here;
    const bool update = std::getenv("DIMER_UPDATE_GOLDEN") != nullptr;
    std::istringstream manifest(read_file(std::string(DIMER_GOLDEN_DIR) + "/cases.txt"));
    std::string line;
    int cases = 0;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string name, tok;
        ls >> name;
        std::vector<std::string> args;
        while (ls >> tok)
            args.push_back(tok);
        CAPTURE(name);
        std::string got = transcript(run(args));
        std::string path = std::string(DIMER_GOLDEN_DIR) + "/" + name + ".out";
        if (update) {
            std::ofstream(path, std::ios::binary) << got;
        } else {
            REQUIRE(fs::exists(path));
            CHECK(got == read_file(path));
        }
        ++cases;
    }
    CHECK(cases >= 48);
}

}
