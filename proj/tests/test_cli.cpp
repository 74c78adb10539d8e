#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "motivic/cli.hpp"
#include "motivic/workspace.hpp"

using namespace motivic;

namespace {
const std::string kFixtures = MOTIVIC_FIXTURES_DIR;
std::string fx(const std::string& name) { return kFixtures + "/" + name; }
}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("expression parsing: shapes and rejections") {
        ClassExpr e = parse_class_expr("[P2] + L");
        CHECK(e.kind == ClassExpr::Kind::Add);
        CHECK(e.kids.size() == 2);
        CHECK(e.kids[0].kind == ClassExpr::Kind::Ref);
        CHECK(e.kids[1].kind == ClassExpr::Kind::L);

        CHECK_THROWS_WITH_AS(parse_class_expr("[X]*[Y]"), doctest::Contains("class x class"),
                             ParseError);

        ClassExpr ok = parse_class_expr("L^2*[Y] + inv(L-1)*[Z]");
        CHECK(ok.kind == ClassExpr::Kind::Add);
        CHECK(ok.isClass);

        CHECK_THROWS_AS(parse_class_expr("[X] +"), ParseError);
        CHECK_THROWS_AS(parse_class_expr("inv(L^2)"), ParseError);
        CHECK_THROWS_AS(parse_class_expr("[X]^2"), ParseError);
        try {
            parse_class_expr("[X] @ [Y]");
        } catch (const ParseError& p) {
            CHECK(p.position == 4);
        }
    }

    TEST_CASE("expression evaluation against a database") {
        test::TestDb t;
        KClass c = eval_class_expr(parse_class_expr("L^2*[P1] + 3*[pt]"), t.db).asClass();
        KClass want = KClass::generator(t.p1, 2) + KClass::generator(t.pt, 0, Int(3));
        CHECK(c == want);
        // Scalars promote to unit-class multiples.
        KClass s = eval_class_expr(parse_class_expr("L^-3 + 1"), t.db).asClass();
        CHECK(s == KClass::unit(Int(1), -3) + KClass::unit());
        CHECK_THROWS(eval_class_expr(parse_class_expr("[missing]"), t.db));
    }

    TEST_CASE("toric stringy subcommand prints the canonical polynomial") {
        auto res = run_command({"toric", "stringy", fx("p112.json")});
        REQUIRE(res.status == 0);
        CHECK(res.out == "1 + 2*uv + (uv)^2\n");
        auto res2 = run_command({"toric", "e-poly", fx("p112.json")});
        CHECK(res2.out == "1 + uv + (uv)^2\n");
        auto res3 = run_command({"toric", "hodge", fx("p2.json"), "-p", "1", "-q", "1"});
        CHECK(res3.out == "1\n");
    }

    TEST_CASE("check symmetry exits 0 with residual 0") {
        auto res = run_command({"check", "symmetry", fx("p112.json")});
        CHECK(res.status == 0);
        CHECK(res.out.find("residual: 0") != std::string::npos);
        // Incomplete fans are refused as an input error.
        auto refused = run_command({"check", "symmetry", fx("a1_fan.json")});
        CHECK(refused.status == 2);
        CHECK(refused.err.find("complete") != std::string::npos);
    }

    TEST_CASE("kclass eval through the localization") {
        auto res = run_command({"--db", fx("workspace.json"), "kclass", "eval", "[P2]*inv(L-1)",
                                "--family", "T", "-j", "1", "-n", "2"});
        REQUIRE(res.err == "");
        CHECK(res.status == 0);
        CHECK(res.out == "-2\n");
        // The user-declared family gives the same value.
        auto res2 = run_command({"--db", fx("workspace.json"), "kclass", "eval", "[P2]*inv(L-1)",
                                 "--family", "Tpt", "-j", "1", "-n", "2"});
        CHECK(res2.out == "-2\n");
    }

    TEST_CASE("kclass rewrite prints smooth projective classes") {
        auto res = run_command({"--db", fx("workspace.json"), "kclass", "rewrite", "[A1]"});
        CHECK(res.status == 0);
        CHECK(res.out == "[P1] - [pt]\n");
        auto res2 = run_command({"--db", fx("workspace.json"), "kclass", "rewrite", "[NodalCubic]"});
        CHECK(res2.status == 0);
        CHECK(res2.out == "[P1] - [pt]\n");
    }

    TEST_CASE("snc subcommands") {
        auto res = run_command({"--db", fx("workspace.json"), "snc", "integral", fx("a1_res.json")});
        CHECK(res.status == 0);
        CHECK(res.out == "[Y2]\n");
        auto res2 = run_command(
            {"--db", fx("workspace.json"), "snc", "stringy", fx("a1_res.json"), "--family", "E"});
        CHECK(res2.status == 0);
        CHECK(res2.out == "uv + (uv)^2\n");
    }

    TEST_CASE("check resolution-independence across the two A_1 resolutions") {
        auto res = run_command({"--db", fx("workspace.json"), "check", "resolution-independence",
                                fx("a1_res.json"), fx("a1_res2.json"), "--family", "E"});
        CHECK(res.status == 0);
        CHECK(res.out.find("residual: 0") != std::string::npos);
        auto bad = run_command({"--db", fx("workspace.json"), "check", "resolution-independence",
                                fx("a1_res.json"), fx("a1_res_bad.json"), "--family", "E"});
        CHECK(bad.status == 1);
    }

    TEST_CASE("toric and SNC surfaces agree on P(1,1,2)") {
        auto toric = run_command({"toric", "stringy", fx("p112.json")});
        auto snc = run_command(
            {"--db", fx("workspace.json"), "snc", "stringy", fx("f2_res.json"), "--family", "E"});
        REQUIRE(toric.status == 0);
        REQUIRE(snc.status == 0);
        CHECK(toric.out == snc.out);
        CHECK(toric.out == "1 + 2*uv + (uv)^2\n");
    }

    TEST_CASE("check k-equiv") {
        auto res = run_command({"--db", fx("workspace.json"), "check", "k-equiv", fx("p2_keq.json"),
                                fx("p2_keq.json"), "--family", "E"});
        CHECK(res.status == 0);
        CHECK(res.out.find("equal") == 0);
    }

    TEST_CASE("check mirror accepts literal polynomials") {
        auto res = run_command(
            {"check", "mirror", "1 - u - v + uv", "1 - u - v + uv", "-n", "1", "--family", "E"});
        CHECK(res.status == 0);
        auto bad = run_command({"check", "mirror", "1 + uv", "0", "-n", "1", "--family", "E"});
        CHECK(bad.status == 1);
    }

    TEST_CASE("the box-enumeration limit is configurable and surfaces as an input error") {
        auto res = run_command({"--det-limit", "1", "toric", "stringy", fx("p112.json")});
        CHECK(res.status == 2);
        CHECK(res.err.find("limit") != std::string::npos);
        auto ok = run_command({"--det-limit", "2", "toric", "stringy", fx("p112.json")});
        CHECK(ok.status == 0);
    }

    TEST_CASE("check k-equiv honors --precision for modular comparison") {
        auto res = run_command({"--db", fx("workspace.json"), "--precision", "3", "check", "k-equiv",
                                fx("p2_keq.json"), fx("p2_keq.json")});
        CHECK(res.status == 0);
    }

    TEST_CASE("exit codes: malformed input is 2, failed checks are 1") {
        CHECK(run_command({"toric", "e-poly", fx("malformed.json")}).status == 2);
        CHECK(run_command({"toric", "e-poly", fx("nonexistent.json")}).status == 2);
        CHECK(run_command({"bogus-subcommand"}).status == 2);
        CHECK(run_command({"kclass", "eval", "[P2 syntax", "--family", "T", "-j", "0", "-n", "0"}).status == 2);
    }

    TEST_CASE("parsers reject garbage without crashing") {
        std::mt19937 rng(8887);
        const std::string alphabet = "[]()+-*^Luvinv0123456789 .,;";
        std::uniform_int_distribution<std::size_t> len(0, 24);
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        for (int i = 0; i < 500; ++i) {
            std::string s;
            std::size_t n = len(rng);
            for (std::size_t j = 0; j < n; ++j) s += alphabet[pick(rng)];
            try {
                (void)parse_class_expr(s);
            } catch (const Error&) {
            }
            try {
                (void)parse_bipoly(s);
            } catch (const Error&) {
            }
        }
    }

    TEST_CASE("--json output carries the same data as text") {
        auto text = run_command({"toric", "stringy", fx("p112.json")});
        auto js = run_command({"--json", "toric", "stringy", fx("p112.json")});
        REQUIRE(js.status == 0);
        auto parsed = nlohmann::json::parse(js.out);
        std::string textLine = text.out.substr(0, text.out.size() - 1);
        CHECK(parsed.at("text").get<std::string>() == textLine);
        // Rebuild the polynomial from the JSON terms and compare.
        BiPoly rebuilt;
        for (const auto& t : parsed.at("terms"))
            rebuilt.addTerm({t.at("p").get<long>(), t.at("q").get<long>()},
                            Int(t.at("c").get<std::string>()));
        CHECK(rebuilt == parse_bipoly(textLine));

        auto hodgeJs = run_command({"--json", "toric", "hodge", fx("p2.json"), "-p", "2", "-q", "2"});
        CHECK(nlohmann::json::parse(hodgeJs.out).at("value") == "1");
    }

    TEST_CASE("rendered outputs re-parse to equal values") {
        // Polynomial round trip through the CLI surface.
        auto res = run_command({"snc", "stringy", fx("a1_res.json"), "--db", fx("workspace.json")});
        REQUIRE(res.status == 0);
        std::string line = res.out.substr(0, res.out.size() - 1);
        CHECK(parse_bipoly(line) == parse_bipoly("uv + (uv)^2"));
        // Class round trip.
        Workspace ws = load_workspace_file(fx("workspace.json"));
        KClass c = eval_class_expr(parse_class_expr("[P2]*inv(L-1) + 2*[pt]"), ws.db).asClass();
        CHECK(eval_class_expr(parse_class_expr(c.str()), ws.db).asClass() == c);
    }

    TEST_CASE("workspace loading validates families against blow-up data") {
        Workspace ws = load_workspace_file(fx("workspace.json"));
        CHECK(ws.families.count("E"));
        CHECK(ws.families.count("T"));
        CHECK(ws.families.at("T").type == Exp2{1, 2});
        CHECK(ws.families.count("Tpt"));
        CHECK(ws.blowups.size() == 1);
        // A workspace with tables violating the declared blow-up is rejected.
        nlohmann::json j = read_json_file(fx("workspace.json"));
        for (auto& v : j["varieties"])
            if (v["name"] == "BlP2") v["invariants"]["T"]["(1,2)"] = 7;
        CHECK_THROWS_AS(load_workspace(j), MalformedRecordError);
    }

    TEST_CASE("fan support overrides are honored and checked") {
        nlohmann::json j = read_json_file(fx("a1_fan.json"));
        j["support"] = {{"0", {"1", "0"}}};
        Fan f = load_fan(j);
        auto s = load_support(j, f);
        CHECK(s.perCone.at({0, 1}) == lattice::QVec{Rat(1), Rat(0)});
        j["support"] = {{"0", {"1", "1"}}};  // not 1 on ray (1,2)
        Fan f2 = load_fan(j);
        CHECK_THROWS_AS(load_support(j, f2), NotQGorensteinError);
    }
}
