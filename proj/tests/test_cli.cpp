#include "catch2/catch_amalgamated.hpp"

#include "fewxc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fewxc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fewxc_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = path / name;
        std::ofstream f(p);
        f << content;
        return p.string();
    }
};

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kPrismJson = R"({
  "dim": 3,
  "vertices": [["0","0","0"],["1","0","0"],["0","1","0"],
               ["0","0","1"],["1","0","1"],["0","1","1"]]
})";

} // namespace

TEST_CASE("classify subcommand: exact value, deterministic output") {
    TempDir tmp;
    const auto file = tmp.file("prism.json", kPrismJson);
    auto r1 = run_cli({"classify", file});
    CHECK(r1.code == 0);
    auto j = json::parse(r1.out);
    CHECK(j["xc"] == 5);
    // The prism has d+2 facets, so the decision tree reports that case.
    CHECK(j["case"] == "facets_d2");
    auto r2 = run_cli({"classify", file});
    CHECK(r2.out == r1.out); // byte-identical
}

TEST_CASE("classify subcommand: interval exits 2") {
    TempDir tmp;
    const auto file = tmp.file("heptagon.json", R"({
      "dim": 2,
      "vertices": [["1","1"],["2","4"],["3","9"],["4","16"],["5","25"],["6","36"],["7","49"]]
    })");
    auto r = run_cli({"classify", file});
    CHECK(r.code == 2);
    auto j = json::parse(r.out);
    CHECK(j["case"] == "out_of_scope");
    CHECK(j["xc"]["lo"] == 6);
    CHECK(j["xc"]["hi"] == 7);
}

TEST_CASE("malformed input exits 3 and names the offending token") {
    TempDir tmp;
    const auto file = tmp.file("bad.json", R"({"dim": 2, "vertices": [["1","x/y"],["0","1"],["1","0"]]})");
    auto r = run_cli({"classify", file});
    CHECK(r.code == 3);
    CHECK(r.err.find("x/y") != std::string::npos);

    const auto nofile = run_cli({"classify", (tmp.path / "missing.json").string()});
    CHECK(nofile.code == 3);

    const auto badjson = run_cli({"classify", tmp.file("notjson.json", "{oops")});
    CHECK(badjson.code == 3);

    const auto baddim = run_cli(
        {"classify", tmp.file("dim.json", R"({"dim": 3, "vertices": [["0","0"],["1","0"],["0","1"]]})")});
    CHECK(baddim.code == 3);
}

TEST_CASE("construct subcommand round trips through classify") {
    TempDir tmp;
    const auto spec = tmp.file("spec.json", R"({"kind": "join_family", "k": 0, "n": 1, "m": 1})");
    auto r = run_cli({"construct", spec});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["dim"] == 6);
    CHECK(j["vertices"].size() == 10);

    const auto built = tmp.file("built.json", r.out);
    auto rc = run_cli({"classify", built});
    CHECK(rc.code == 0);
    auto jc = json::parse(rc.out);
    CHECK(jc["xc"] == 9);
    CHECK(jc["case"] == "facets_d3_sporadic");

    const auto badspec = tmp.file("badspec.json", R"({"kind": "moebius"})");
    CHECK(run_cli({"construct", badspec}).code == 3);
}

TEST_CASE("gale subcommand") {
    TempDir tmp;
    const auto file = tmp.file("prism.json", kPrismJson);
    auto r = run_cli({"gale", file});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["corank"] == 2);
    CHECK(j["polytopal"] == true);
    CHECK(j["vectors"].size() == 6);
}

TEST_CASE("bounds subcommand") {
    auto r = run_cli({"bounds", "--d", "2", "--n", "9"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["generic_lower"] == 7);
    CHECK(j["generic_lower_exact"] == true);
    CHECK(j["r"] == 18);

    auto r2 = run_cli({"bounds", "--d", "8", "--alpha", "3"});
    auto j2 = json::parse(r2.out);
    CHECK(j2["join_family_count"] == 4);
    CHECK(j2["alpha_threshold"] == 2);
    CHECK(j2["pyramid_dim_guard"] == 7);
}

TEST_CASE("slack and verify subcommands") {
    TempDir tmp;
    const auto file = tmp.file("prism.json", kPrismJson);
    auto r = run_cli({"slack", file});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["rows"] == 5);
    CHECK(j["cols"] == 6);

    // Identity certificate verifies with exit 0.
    const auto cert = tmp.file("cert.json", std::string(R"({"keep": 3, "Q": )") + kPrismJson + "}");
    auto rv = run_cli({"verify", file, cert});
    CHECK(rv.code == 0);
    auto jv = json::parse(rv.out);
    CHECK(jv["ok"] == true);
    CHECK(jv["facet_count"] == 5);

    // A wrong target fails with exit 1.
    const auto tri = tmp.file("tri.json", R"({"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]})");
    CHECK(run_cli({"verify", tri, cert}).code == 1);
}

TEST_CASE("classify emits certificates that verify") {
    TempDir tmp;
    // A Desarguian pyramid: the certificate carries target and extension.
    std::ostringstream hexjson;
    hexjson << to_json(pyramid(regular_hexagon(), 1)).dump(2);
    const auto file = tmp.file("pyrhex.json", hexjson.str());
    auto r = run_cli({"classify", file});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["case"] == "desarguian_pyramid");
    CHECK(j["xc"] == 6);
    const auto target = tmp.file("target.json", j["certificate"]["target"].dump());
    const auto cert = tmp.file("cert.json", j["certificate"]["extension"].dump());
    auto rv = run_cli({"verify", target, cert});
    CHECK(rv.code == 0);
    auto jv = json::parse(rv.out);
    CHECK(jv["facet_count"] == 6); // d+3 facets certify xc <= d+3
}

TEST_CASE("corpus subcommand materializes a manifest") {
    TempDir tmp;
    const auto dir = (tmp.path / "corpus").string();
    // The quick corpus path is exercised through the library; the CLI runs
    // the full corpus including sporadics, which is covered by acceptance.
    auto entries = corpus(false);
    CHECK(entries.size() >= 50);
    std::set<std::string> names;
    for (const auto& e : entries) {
        CHECK(names.insert(e.name).second);
        validate(e.polytope);
    }
}

TEST_CASE("usage errors exit 3") {
    CHECK(run_cli({"no-such-command"}).code == 3);
    CHECK(run_cli({}).code == 3);
    CHECK(run_cli({"bounds"}).code == 3); // missing required --d
}
