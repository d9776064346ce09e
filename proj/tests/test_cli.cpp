#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kronrep/cli.hpp"
#include "kronrep/errors.hpp"
#include "kronrep/module_io.hpp"

using namespace kronrep;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result runCli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string writeTemp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("kronrep_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("classify") {
    auto r = runCli({"classify", "-n", "3", "2", "5"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out ==
          "vector (2,5) n=3\n"
          "class: imaginary\n"
          "q: -1\n"
          "in fundamental domain: false\n"
          "cover-thin: true\n");

    r = runCli({"--format", "json", "classify", "-n", "3", "1", "4"});
    CHECK(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["class"] == "none");
    CHECK(j["q"] == 5);
    CHECK(j["coverThin"] == false);

    r = runCli({"classify", "-n", "1", "1", "1"});
    CHECK(r.out.find("in fundamental domain: n/a") != std::string::npos);
}

TEST_CASE("construct") {
    auto r = runCli({"construct", "-n", "3", "2", "2", "--composition", "1,1", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["dim"] == nlohmann::json::array({2, 2}));
    CHECK(j["nonzeros"] == 3);
    CHECK(j["subtree"]["code"] == "i(1o)(3o(1i))");
    CHECK(j["coefficientQuiver"]["isTreePresentation"] == true);
    // The document reads back as the module it describes.
    const auto m = moduleFromJson(j);
    CHECK(m == pushdown(canonicalConstruction(KroneckerIndex(3), 2, 2, {{1, 1}}), FieldSpec::prime(2)));

    r = runCli({"construct", "-n", "3", "2", "2", "--composition", "1,1", "--format", "dot"});
    CHECK(r.out ==
          "digraph subtree {\n"
          "  v0 [shape=circle, tooltip=\"1.3\"];\n"
          "  v1 [shape=box, tooltip=\"1.3.1\"];\n"
          "  v2 [shape=box, tooltip=\"1\"];\n"
          "  v3 [shape=circle, tooltip=\"\"];\n"
          "  v1 -> v0 [label=\"α1\"];\n"
          "  v2 -> v3 [label=\"α1\"];\n"
          "  v2 -> v0 [label=\"α3\"];\n"
          "}\n"
          "digraph coefficient_quiver {\n"
          "  c0 [shape=box, tooltip=\"1.3.1\"];\n"
          "  c1 [shape=box, tooltip=\"1\"];\n"
          "  r0 [shape=circle, tooltip=\"1.3\"];\n"
          "  r1 [shape=circle, tooltip=\"\"];\n"
          "  c0 -> r0 [label=\"α1\"];\n"
          "  c1 -> r1 [label=\"α1\"];\n"
          "  c1 -> r0 [label=\"α3\"];\n"
          "}\n");

    r = runCli({"construct", "-n", "3", "2", "6"});
    CHECK(r.code == cli::kExitNegative);
    CHECK(r.err == "no cover-thin module: y > (n-1)x+1\n");

    r = runCli({"construct", "-n", "3", "2", "4", "--composition", "3,1"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("y(1) <= n-1 = 2") != std::string::npos);

    r = runCli({"construct", "-n", "3", "2", "3", "--perm", "2,1,3", "--format", "json"});
    CHECK(r.code == cli::kExitOk);
    CHECK(nlohmann::json::parse(r.out)["subtree"]["code"] != "");
    CHECK(runCli({"construct", "-n", "3", "2", "3", "--perm", "1,1,3"}).code == cli::kExitUsage);
    CHECK(runCli({"construct", "-n", "3", "2", "3", "--perm", "1,2"}).code == cli::kExitUsage);
}

TEST_CASE("enumerate") {
    auto r = runCli({"enumerate", "-n", "3", "1", "1"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "n=3 dim=(1,1) classes=3\ni(1o)\ni(2o)\ni(3o)\n");
    CHECK(runCli({"enumerate", "-n", "3", "2", "6"}).code == cli::kExitNegative);

    r = runCli({"enumerate", "-n", "3", "7", "7"});
    CHECK(r.code == cli::kExitBudget);
    CHECK(r.err.find("budget exceeded") != std::string::npos);
    CHECK(runCli({"--budget", "5", "enumerate", "-n", "3", "3", "3"}).code == cli::kExitBudget);
}

TEST_CASE("budget from the environment") {
    ::setenv("KRONREP_BUDGET", "5", 1);
    CHECK(cli::budgetFromEnvironment() == 5);
    CHECK(runCli({"enumerate", "-n", "3", "3", "3"}).code == cli::kExitBudget);
    // The flag wins over the environment.
    CHECK(runCli({"enumerate", "-n", "3", "3", "3", "--budget", "6"}).code == cli::kExitOk);
    ::setenv("KRONREP_BUDGET", "lots", 1);
    CHECK(cli::budgetFromEnvironment() == kDefaultEnumerationBudget);
    ::unsetenv("KRONREP_BUDGET");
    CHECK(cli::budgetFromEnvironment() == kDefaultEnumerationBudget);
}

TEST_CASE("verify") {
    auto r = runCli({"verify", "-n", "3", "--max", "4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out ==
          "n=3 window x+y<=4\n"
          "PASS (1,1) classes=3 required=3\n"
          "PASS (1,2) classes=3 required=3\n"
          "PASS (2,1) classes=3 required=3\n"
          "PASS (2,2) classes=6 required=3\n"
          "PASS: 4 imaginary roots, 0 counterexamples, 0 skipped\n");

    r = runCli({"verify", "-n", "3", "--max", "5", "--field", "q", "--format", "json"});
    CHECK(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["fields"] == nlohmann::json::array({"Q"}));
    CHECK(j["pass"] == true);
    CHECK(j["counterexamples"] == 0);

    CHECK(runCli({"verify", "-n", "4", "--max", "14", "--budget", "14", "--field", "f2"}).code == cli::kExitNegative);
    CHECK(runCli({"verify", "-n", "3", "--max", "13"}).code == cli::kExitBudget);
}

TEST_CASE("region CSV") {
    const auto r = runCli({"region", "-n", "3", "--max", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out ==
          "x,y,q,class,in_cone,in_F,cover_thin\n"
          "0,1,1,real,0,0,1\n"
          "0,2,4,none,0,0,0\n"
          "1,0,1,real,0,0,1\n"
          "1,1,-1,imaginary,1,1,1\n"
          "1,2,-1,imaginary,1,1,1\n"
          "2,0,4,none,0,0,0\n"
          "2,1,-1,imaginary,1,0,1\n"
          "2,2,-4,imaginary,1,1,1\n");
    CHECK(cli::regionCsv(KroneckerIndex(1), 1) ==
          "x,y,q,class,in_cone,in_F,cover_thin\n"
          "0,1,1,real,0,0,1\n"
          "1,0,1,real,0,0,1\n"
          "1,1,1,real,0,0,1\n");
}

TEST_CASE("reduce and series") {
    CHECK(runCli({"reduce", "-n", "3", "13", "5"}).out == "(13,5) -> (1,2) after 2 Coxeter steps\n");
    const auto j = nlohmann::json::parse(runCli({"reduce", "-n", "3", "2", "5", "--format", "json"}).out);
    CHECK(j["representative"] == nlohmann::json::array({1, 1}));
    CHECK(j["power"] == -1);
    CHECK(runCli({"reduce", "-n", "3", "1", "3"}).code == cli::kExitUsage);
    CHECK(runCli({"reduce", "-n", "1", "1", "1"}).code == cli::kExitUsage);

    CHECK(runCli({"series", "-n", "3", "--count", "3"}).out == "P0 (0,1) q=1\nP1 (1,3) q=1\nP2 (3,8) q=1\n");
    CHECK(runCli({"series", "-n", "3", "--count", "2", "--injective"}).out == "I0 (1,0) q=1\nI1 (3,1) q=1\n");
}

TEST_CASE("hom and decide read module files") {
    const auto a = runCli({"construct", "-n", "3", "2", "3", "--format", "json"}).out;
    const auto b = runCli({"construct", "-n", "3", "1", "2", "--format", "json"}).out;
    const auto fa = writeTemp("a.json", a);
    const auto fb = writeTemp("b.json", b);
    auto r = runCli({"hom", "-n", "3", fa, fa});
    CHECK(r.code == cli::kExitOk);
    const auto ma = moduleFromJson(nlohmann::json::parse(a));
    CHECK(r.out == "dim Hom = " + std::to_string(homDim(ma, ma).dimension) + "\n");
    CHECK(runCli({"hom", fa, fb, "--format", "json"}).code == cli::kExitOk);

    r = runCli({"decide", fa});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.rfind("indecomposable", 0) == 0);

    // A direct sum written by hand is decomposable: exit 1.
    const auto sum = toJson(directSum(ma, moduleFromJson(nlohmann::json::parse(b))));
    const auto fs = writeTemp("sum.json", sum.dump());
    r = runCli({"decide", fs, "--format", "json"});
    CHECK(r.code == cli::kExitNegative);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "decomposable");

    CHECK(runCli({"decide", "/nonexistent/module.json"}).code == cli::kExitUsage);
    const auto bad = writeTemp("bad.json", R"({"n": 2, "field": "F2", "dim": [1, 1], "matrices": [[[1]]]})");
    CHECK(runCli({"decide", bad}).code == cli::kExitUsage);
    const auto garbage = writeTemp("garbage.json", "{not json");
    CHECK(runCli({"decide", garbage}).code == cli::kExitUsage);
}

TEST_CASE("usage errors") {
    CHECK(runCli({}).code == cli::kExitUsage);
    CHECK(runCli({"classify", "-n", "3", "two", "2"}).code == cli::kExitUsage);
    CHECK(runCli({"classify", "-n", "0", "1", "1"}).code == cli::kExitUsage);
    CHECK(runCli({"classify", "-n", "256", "1", "1"}).code == cli::kExitUsage);
    CHECK(runCli({"classify", "--field", "F4", "1", "1"}).code == cli::kExitUsage);
    CHECK(runCli({"classify", "--format", "yaml", "1", "1"}).code == cli::kExitUsage);
    CHECK(runCli({"frobnicate"}).code == cli::kExitUsage);
    CHECK(runCli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("integer lists") {
    CHECK(cli::parseIntList("1,2,3") == std::vector<int>{1, 2, 3});
    CHECK(cli::parseIntList("7") == std::vector<int>{7});
    CHECK_THROWS_AS(cli::parseIntList(""), DomainError);
    CHECK_THROWS_AS(cli::parseIntList("1,,2"), DomainError);
    CHECK_THROWS_AS(cli::parseIntList("1,x"), DomainError);
    CHECK_THROWS_AS(cli::parseIntList("1.5"), DomainError);
}

TEST_CASE("module JSON round trip") {
    const KroneckerIndex n3(3);
    for (const auto& field : {FieldSpec::prime(2), FieldSpec::prime(5), FieldSpec::rationals()})
        for (const auto& t : enumerateSubtrees(n3, 2, 3)) {
            const auto m = pushdown(t, field);
            const auto text = toJson(m).dump();
            CHECK(moduleFromJson(nlohmann::json::parse(text)) == m);
        }
    // Non-integral rationals travel as strings.
    Matrix<Rational> a(1, 1), b(1, 1);
    a(0, 0) = Rational(-3, 4);
    const KroneckerModule q(KroneckerIndex(2), FieldSpec::rationals(), {1, 1}, {a, b});
    const auto j = toJson(q);
    CHECK(j["matrices"][0][0][0] == "-3/4");
    CHECK(moduleFromJson(nlohmann::json::parse(j.dump())) == q);

    auto tampered = nlohmann::json::parse(j.dump());
    tampered["nonzeros"] = 2;
    CHECK_THROWS_AS(moduleFromJson(tampered), DomainError);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::vector<std::string>> commands{
        {"classify", "-n", "4", "3", "5", "--format", "json"},
        {"construct", "-n", "4", "3", "7", "--format", "json"},
        {"construct", "-n", "4", "3", "7", "--format", "dot"},
        {"enumerate", "-n", "3", "3", "4", "--format", "json"},
        {"enumerate", "-n", "3", "2", "3", "--format", "dot"},
        {"verify", "-n", "3", "--max", "7", "--format", "json"},
        {"region", "-n", "4", "--max", "6"},
        {"reduce", "-n", "5", "4", "13", "--format", "json"},
        {"series", "-n", "4", "--format", "json"},
    };
    for (const auto& c : commands) {
        const auto first = runCli(c);
        const auto second = runCli(c);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK_FALSE(first.out.empty());
    }
}
