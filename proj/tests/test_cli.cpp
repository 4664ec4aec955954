#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perind/cli.hpp"
#include "perind/report_json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = perind::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name, const std::string& content)
{
    const auto dir = std::filesystem::temp_directory_path() / "perind-cli-test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path;
}

struct Golden {
    const char* file;
    std::vector<std::string> args;
};

const std::vector<Golden>& goldens()
{
    static const std::vector<Golden> cases = {
        {"m_4_2", {"m", "4", "2"}},
        {"m_12_2_oracle", {"m", "12", "2", "--oracle"}},
        {"n_12_5", {"n", "12", "5"}},
        {"kummer_3_3_6", {"kummer", "3", "3", "6"}},
        {"factorize_360", {"factorize", "360"}},
        {"upper_6_2", {"upper-bound", "--dim", "6", "--period", "2"}},
        {"upper_8_2", {"upper-bound", "--dim", "8", "--period", "2"}},
        {"upper_4_6", {"upper-bound", "--dim", "4", "--period", "6"}},
        {"upper_pp_5_5", {"upper-bound", "--dim", "5", "--period", "5", "--prime-power"}},
        {"lower_2_5", {"lower-bound", "--period", "2", "--skeleton", "5"}},
        {"sandwich_2_5", {"sandwich", "--period", "2", "--skeleton", "5"}},
        {"pu_order_4_2", {"pu-order", "4", "2"}},
        {"admissible_4", {"admissible", "--degree", "4", "--orders", "2,2"}},
        {"min_degree_3", {"min-degree", "--orders", "3,3,3", "--cap", "1000"}},
        {"consistency_2_6", {"consistency", "--period", "2", "--index", "6"}},
        {"stable_2_3", {"stable-exponent", "--period", "2", "--degree", "3"}},
        {"cohomology_rp2_mod2", {"cohomology", "--fixture", "rp2", "--mod", "2"}},
        {"cohomology_bz3_deg4", {"cohomology", "--fixture", "bz3-skel9", "--degree", "4"}},
        {"bockstein_bz2", {"bockstein", "--fixture", "bz2-skel9", "--degree", "1", "--mod", "2"}},
        {"ahss_bz2_skel6", {"ahss-bound", "--fixture", "bz2-skel6", "--period", "2"}},
        {"fixtures_rp2", {"fixtures", "emit", "rp2"}},
    };
    return cases;
}

} // namespace

TEST_CASE("JSON output matches golden files")
{
    for (const auto& g : goldens()) {
        auto args = g.args;
        args.insert(args.begin(), "--json");
        const Run r = run(args);
        INFO(g.file);
        REQUIRE(r.code == 0);
        const auto path = std::filesystem::path(PERIND_GOLDEN_DIR) / (std::string(g.file) + ".json");
        std::ifstream in(path);
        REQUIRE_MESSAGE(in.good(), "missing golden " << path);
        const json expected = json::parse(in);
        const json actual = json::parse(r.out);
        CHECK_MESSAGE(actual == expected, actual.dump(2));
    }
}

TEST_CASE("envelopes round-trip")
{
    for (const auto& g : goldens()) {
        if (g.args[0] == "fixtures") continue;
        auto args = g.args;
        args.push_back("--json");
        const Run r = run(args);
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        const auto env = perind::OutputEnvelope::from_json(j);
        CHECK(env.command == g.args[0]);
        CHECK(env.to_json() == j);
        CHECK(perind::OutputEnvelope::from_json(env.to_json()) == env);
        if (j["result"].contains("kind")) CHECK(perind::to_json(perind::bound_report_from_json(j["result"])) == j["result"]);
    }
}

TEST_CASE("human output states the divisibility direction")
{
    CHECK(run({"m", "4", "2"}).out == "2\n");
    const Run up = run({"upper-bound", "--dim", "6", "--period", "2"});
    CHECK(up.code == 0);
    CHECK(up.out.find("ind_K(alpha) divides 64") != std::string::npos);
    CHECK(up.out.find("stable-exponent-product") != std::string::npos);
    const Run low = run({"lower-bound", "--period", "2", "--skeleton", "5"});
    CHECK(low.out.find("4 divides ind(alpha)") != std::string::npos);
    const Run sw = run({"sandwich", "--period", "2", "--skeleton", "5"});
    CHECK(sw.code == 0);
    CHECK(sw.out.find("4 divides ind(alpha)") != std::string::npos);
    CHECK(sw.out.find("divides 64") != std::string::npos);
}

TEST_CASE("exit codes")
{
    const Run hyp = run({"upper-bound", "--dim", "6", "--period", "9", "--prime-power"});
    CHECK(hyp.code == 1);
    CHECK(hyp.err.find("hypothesis-violated") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"m", "4"}).code == 2);
    CHECK(run({"m", "four", "2"}).code == 2);
    CHECK(run({"upper-bound", "--dim", "6"}).code == 2);
    CHECK(run({"m", "4", "0"}).code == 1);
    CHECK(run({"lower-bound", "--period", "2", "--skeleton", "2"}).code == 1);
    CHECK(run({"admissible", "--degree", "4", "--orders", "4,3"}).err.find("invalid-profile") != std::string::npos);
    CHECK(run({"cohomology", "--fixture", "rp2", "--degree", "3"}).err.find("degree-out-of-range") !=
          std::string::npos);
    CHECK(run({"cohomology"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("file inputs")
{
    const auto good = scratch("rp2.json", R"({"name":"rp2","cell_counts":[1,1,1],"boundaries":[[[0]],[[2]]]})");
    const Run c = run({"cohomology", good.string(), "--degree", "2"});
    CHECK(c.code == 0);
    CHECK(c.out.find("Z/2") != std::string::npos);

    const auto bad = scratch("bad.json", R"({"name":"x","cell_counts":[1,1,1],"boundaries":[[[1]],[[1]]]})");
    const Run b = run({"cohomology", bad.string()});
    CHECK(b.code == 1);
    CHECK(b.err.find("invalid-complex") != std::string::npos);
    CHECK(b.err.find("(k=1, row=0, col=0)") != std::string::npos);

    const auto garbage = scratch("garbage.json", "{not json");
    const Run g = run({"cohomology", garbage.string()});
    CHECK(g.code == 1);
    CHECK(g.err.find("malformed-input") != std::string::npos);

    const auto shape = scratch("shape.json", R"({"d":6,"r":2,"h":[{"free_rank":1},{},{"torsion":[2]},{},
                                                {"torsion":[2]},{"torsion":[4]},{"torsion":[2]}]})");
    const Run s = run({"--json", "ahss-bound", "--shape", shape.string()});
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["result"]["bound"] == 8);

    const auto table = scratch("table.json", R"({"stable_table":[{"r":2,"j":6,"invariant_factors":[2]},
                                                                {"r":2,"j":7,"invariant_factors":[16]}]})");
    const Run t = run({"--json", "upper-bound", "--dim", "8", "--period", "2", "--table", table.string()});
    REQUIRE(t.code == 0);
    CHECK(json::parse(t.out)["result"]["bound"] == 64 * 2 * 16);

    const Run missing = run({"upper-bound", "--dim", "8", "--period", "2", "--table", "/nonexistent.json"});
    CHECK(missing.code == 1);
}

TEST_CASE("emitted fixtures load back")
{
    const Run e = run({"fixtures", "emit", "bz4-skel7"});
    REQUIRE(e.code == 0);
    const auto path = scratch("bz4.json", e.out);
    const Run c = run({"--json", "cohomology", path.string(), "--degree", "4"});
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["result"]["groups"][0]["text"] == "Z/4");
}
