#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "simfrac/cli.hpp"
#include "simfrac/io.hpp"

using namespace simfrac;

namespace {

Tower build(const FiniteScheme& s, int depth) { return extend_to(Tower{s}, depth); }

// Scratch file helper for the CLI tests.
struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("parsing the bundled schemes") {
    auto s = fixtures::diag2();
    CHECK(s.Y.tokens() == std::vector<std::string>{"0", "1"});
    CHECK(s.x1.tokens() == std::vector<std::string>{"d00", "m01", "d11"});
    CHECK(s.phi == std::vector<int>{0, 2});
    CHECK(s.pi_at(0, 1) == s.x1.require("m01"));
    CHECK(s.pi_at(1, 0) == s.x1.require("m01"));
}

TEST_CASE("serialize then parse is the identity") {
    for (const auto& s : {fixtures::diag2(), fixtures::diagonal(4), fixtures::nfi(),
                          fixtures::nonunique(), fixtures::divergent()})
        CHECK(parse_scheme(serialize(s)) == s);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto s = generate_random_scheme(seed);
        CHECK(parse_scheme(serialize(s)) == s);
    }
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_scheme("[Y]\n0 1\n[X0]\na\n[X1]\nA\n[phi]\na A\n"),
                         "missing section [pi]", ParseError);

    try {
        parse_scheme("[Y]\n0\n[X0]\na\nb\na\n[X1]\nA\n[phi]\na A\nb A\n[pi]\n0 a A\n0 b A\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 6); // the duplicate 'a'
        CHECK(std::string(e.what()).find("duplicate token 'a'") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_scheme("[Y]\n0\n[whatever]\n"), ParseError);
    CHECK_THROWS_AS(parse_scheme("stray\n[Y]\n0\n"), ParseError);
    CHECK_THROWS_AS(parse_scheme("[Y]\n0\n[X0]\na\n[X1]\nA\n[phi]\na B\n[pi]\n0 a A\n"),
                    ParseError); // undeclared X1 token
    CHECK_THROWS_AS(parse_scheme("[Y]\n0\n[X0]\na\n[X1]\nA\n[phi]\na\n[pi]\n0 a A\n"),
                    ParseError); // phi entry not a pair
    CHECK_THROWS_AS(
        parse_scheme("[Y]\n0\n[X0]\na\n[X1]\nA\n[phi]\na A\n[pi]\n0 a A\n0 a A\n"),
        ParseError); // duplicate pi entry
    CHECK_THROWS_AS(parse_scheme("[Y]\n0 0\n[X0]\na\n[X1]\nA\n[phi]\na A\n[pi]\n0 a A\n"),
                    ParseError); // duplicate Y token
}

TEST_CASE("comments and spacing are ignored") {
    auto s = parse_scheme("# header\n[Y] # trailing\n 0   1 \n[X0]\n0 1\n[X1]\nd00 m01 d11\n"
                          "[phi]\n0 d00\n1 d11\n[pi]\n0 0 d00\n0 1 m01\n1 0 m01\n1 1 d11\n");
    CHECK(s == fixtures::diag2());
}

TEST_CASE("pair sections parse against the scheme") {
    auto s = fixtures::nonunique();
    Pair p = parse_pair(fixtures::zac_pair_text, s);
    CHECK(p.Z.tokens() == std::vector<std::string>{"a", "c"});
    CHECK(p.phiZ == std::vector<int>{0, 0, 1});

    auto file = parse_scheme_file(fixtures::nonunique_text + "[Z]\na c\n[phiZ]\na a\nb a\nc c\n");
    REQUIRE(file.pair.has_value());
    CHECK(file.pair->phiZ == std::vector<int>{0, 0, 1});

    CHECK_THROWS_AS(parse_scheme_file(fixtures::nonunique_text + "[Z]\na c\n"), ParseError);
    CHECK_THROWS_AS(parse_pair("[Z]\nz\n[phiZ]\na z\nb z\nc z\nd z\n", s), ParseError);
}

TEST_CASE("address parsing and formatting") {
    auto s = fixtures::diag2();
    auto a = parse_address("01(10)", s.Y);
    CHECK(a.prefix == Word{0, 1});
    CHECK(a.period == Word{1, 0});
    CHECK(format_address(a, s.Y) == "01(10)");

    CHECK(parse_address("(0)", s.Y).prefix.empty());
    CHECK(parse_address("0110(10)", s.Y) == parse_address("01(10)", s.Y));

    CHECK_THROWS_AS(parse_address("01", s.Y), SchemeError);
    CHECK_THROWS_AS(parse_address("01()", s.Y), SchemeError);
    CHECK_THROWS_AS(parse_address("0(2)", s.Y), SchemeError);
}

TEST_CASE("multi-character symbols need commas") {
    SymbolSet Y{{"s1", "s2"}};
    CHECK(parse_word("s1,s2,s1", Y) == Word{0, 1, 0});
    CHECK(parse_word("s2", Y) == Word{1});
    CHECK(format_word(Y, {0, 1}) == "s1,s2");
    // s1 (s2 s1)^w normalizes to (s1 s2)^w
    auto a = parse_address("s1(s2,s1)", Y);
    CHECK(a.prefix.empty());
    CHECK(a.period == Word{0, 1});
    CHECK(format_address(a, Y) == "(s1,s2)");
    CHECK_THROWS_AS(parse_word("s1s2", Y), SchemeError);
}

TEST_CASE("point names resolve back to points") {
    auto s = fixtures::diag2();
    Tower t = build(s, 3);
    for (int n = 0; n <= 3; ++n)
        for (int p = 0; p < t.level(n).size; ++p)
            CHECK(parse_point(t, n, point_name(t, n, p)) == p);
    CHECK(parse_point(t, 0, "1") == 1);
    CHECK(parse_point(t, 1, "m01") == 1);
    CHECK(parse_point(t, 2, "01@1") == project_word(t, {0, 1}, 0, 1));
    CHECK_THROWS_AS(parse_point(t, 1, "nope"), SchemeError);
    CHECK_THROWS_AS(parse_point(t, 2, "0@1"), SchemeError); // word too short
    CHECK_THROWS_AS(parse_point(t, 2, "plain"), SchemeError);
}

TEST_CASE("level-0 graph is the single clique of the empty cell") {
    Tower t = build(fixtures::diag2(), 1);
    ApproxGraph g = build_approx_graph(t, 0);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].a == 0);
    CHECK(g.edges[0].b == 1);
    CHECK(g.edges[0].words == std::vector<Word>{{}});
}

TEST_CASE("gasket level-1 graph is three triangles sharing corners") {
    Tower t = build(fixtures::diagonal(3), 1);
    ApproxGraph g = build_approx_graph(t, 1);
    CHECK(t.level(1).size == 6);
    CHECK(g.edges.size() == 9);
}

TEST_CASE("interval level-2 graph is a path on five points") {
    Tower t = build(fixtures::diag2(), 2);
    ApproxGraph g = build_approx_graph(t, 2);
    REQUIRE(t.level(2).size == 5);
    CHECK(g.edges.size() == 4);
    std::vector<int> degree(5, 0);
    for (const auto& e : g.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    CHECK(std::count(degree.begin(), degree.end(), 1) == 2);
    CHECK(std::count(degree.begin(), degree.end(), 2) == 3);
}

TEST_CASE("export rejects unbuilt levels") {
    Tower t = build(fixtures::diag2(), 1);
    CHECK_THROWS_AS(export_graph(t, 2, GraphFormat::dot), SchemeError);
}

TEST_CASE("exports are deterministic byte for byte") {
    Tower t = build(fixtures::diagonal(3), 2);
    CHECK(export_graph(t, 2, GraphFormat::dot) == export_graph(t, 2, GraphFormat::dot));
    CHECK(export_graph(t, 2, GraphFormat::structured) ==
          export_graph(t, 2, GraphFormat::structured));

    Tower t2 = build(fixtures::diagonal(3), 2);
    CHECK(export_graph(t, 2, GraphFormat::dot) == export_graph(t2, 2, GraphFormat::dot));
}

TEST_CASE("dot export shape") {
    Tower t = build(fixtures::diagonal(3), 1);
    std::string dot = export_graph(t, 1, GraphFormat::dot);
    CHECK(dot.rfind("graph level_1 {", 0) == 0);
    size_t nodes = 0, edges = 0, pos = 0;
    while ((pos = dot.find("[label=", pos)) != std::string::npos) {
        ++nodes;
        pos += 7;
    }
    pos = 0;
    while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
        ++edges;
        pos += 4;
    }
    CHECK(nodes == 6 + 9); // every node and every edge carries a label
    CHECK(edges == 9);
}

TEST_CASE("structured export parses as JSON with the expected shape") {
    Tower t = build(fixtures::diag2(), 2);
    auto doc = nlohmann::json::parse(export_graph(t, 2, GraphFormat::structured));
    CHECK(doc["level"] == 2);
    CHECK(doc["levels"].size() == 3);
    CHECK(doc["levels"][1]["points"].size() == 3);
    CHECK(doc["levels"][2]["cells"].size() == 4);
    CHECK(doc["graph"]["vertices"].size() == 5);
    CHECK(doc["graph"]["edges"].size() == 4);
}

TEST_CASE("random schemes are valid and reproducible") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto s = generate_random_scheme(seed);
        CHECK(validate(s).ok);
        CHECK(s.Y.size() <= 4);
        CHECK(s.x0.size() <= 4);
        CHECK(generate_random_scheme(seed) == s);
    }
    CHECK_FALSE(generate_random_scheme(1) == generate_random_scheme(2));
}

TEST_CASE("cli: build prints level sizes") {
    TempFile f("cli_diag2.scm", fixtures::diag2_text);
    auto r = cli({"build", "--scheme", f.path, "--depth", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "levels: 2 3 5 9 17\n");
}

TEST_CASE("cli: relate reports the glued witness") {
    TempFile f("cli_nfi.scm", fixtures::nfi_text);
    auto r = cli({"relate", "--scheme", f.path, "--addr", "(0)", "--addr2", "(1)",
                  "--max-level", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "RELATED witness level=0 point=a\n");
}

TEST_CASE("cli: fixed-point prints the isomorphism") {
    TempFile scheme("cli_nonunique.scm", fixtures::nonunique_text);
    TempFile pair("cli_zac.scm", fixtures::zac_pair_text);
    auto r = cli({"fixed-point", "--scheme", scheme.path, "--pair", pair.path});
    CHECK(r.code == 0);
    CHECK(r.out == "FIXED POINT, iso: a↦a c↦c\n");
}

TEST_CASE("cli: validate fails on a broken scheme") {
    TempFile f("cli_broken.scm",
               "[Y]\n0\n[X0]\na b\n[X1]\nA\n[phi]\na A\nb A\n[pi]\n0 a A\n0 b A\n");
    auto r = cli({"validate", "--scheme", f.path});
    CHECK(r.code == 1);
    CHECK(r.out.find("phi-not-injective") != std::string::npos);

    TempFile ok("cli_ok.scm", fixtures::diag2_text);
    auto r2 = cli({"validate", "--scheme", ok.path});
    CHECK(r2.code == 0);
    CHECK(r2.out == "ok\n");
}

TEST_CASE("cli: member, shadow, cell, report, shift agree with the library") {
    TempFile f("cli_diag2b.scm", fixtures::diag2_text);
    CHECK(cli({"member", "--scheme", f.path, "--level", "0", "--point", "0", "--addr",
               "(0)"})
              .out == "true\n");
    CHECK(cli({"member", "--scheme", f.path, "--level", "0", "--point", "0", "--addr",
               "(01)"})
              .out == "false\n");

    auto shadow_out = cli({"shadow", "--scheme", f.path, "--level", "1", "--point", "m01",
                           "--depth", "3"});
    CHECK(shadow_out.code == 0);
    CHECK(shadow_out.out.find("leaves: 2") != std::string::npos);

    CHECK(cli({"cell", "--scheme", f.path, "--word", "00"}).out == "cell 00: 00@0 00@1\n");

    auto report_out = cli({"report", "--scheme", f.path, "--depth", "3"});
    CHECK(report_out.out == "CERTIFIED_FULLY_INJECTIVE (discrete scheme)\n");

    auto shift_out = cli({"shift", "--scheme", f.path, "--word", "0", "--level", "0"});
    CHECK(shift_out.out.find("injective: true") != std::string::npos);
}

TEST_CASE("cli: hat-relate shows the gluing pair") {
    TempFile f("cli_diag2c.scm", fixtures::diag2_text);
    auto r = cli({"hat-relate", "--scheme", f.path, "--addr", "0(1)", "--addr2", "1(0)"});
    CHECK(r.code == 0);
    CHECK(r.out == "RELATED case=2 x0=1 x0'=0 witness level=1 point=m01\n");
}

TEST_CASE("cli: audit works from a file and from a seed") {
    TempFile f("cli_nfi2.scm", fixtures::nfi_text);
    auto r = cli({"audit", "--scheme", f.path, "--depth", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("floor-intersection: skipped") != std::string::npos);

    auto seeded = cli({"audit", "--seed", "7", "--depth", "3"});
    CHECK(seeded.code == 0);
    CHECK(seeded.out.find("scheme: seed=7") != std::string::npos);
    CHECK(seeded.out.find("PASS") != std::string::npos);

    auto neither = cli({"audit", "--depth", "3"});
    CHECK(neither.code == 2);
}

TEST_CASE("cli: export emits dot and structured formats") {
    TempFile f("cli_diag3.scm", serialize(fixtures::diagonal(3)));
    auto dot = cli({"export", "--scheme", f.path, "--level", "1", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph level_1 {", 0) == 0);
    auto js = cli({"export", "--scheme", f.path, "--level", "1", "--format", "structured"});
    CHECK(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["graph"]["edges"].size() == 9);
}

TEST_CASE("cli: usage and domain error exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({"build"}).code == 2);                              // missing --scheme
    CHECK(cli({"build", "--scheme", "missing.scm"}).code == 1);   // unreadable file
    TempFile f("cli_bad.scm", "[Y]\n0\n");
    CHECK(cli({"build", "--scheme", f.path}).code == 1);          // parse error
    CHECK(cli({"export", "--scheme", f.path, "--format", "nope"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}
