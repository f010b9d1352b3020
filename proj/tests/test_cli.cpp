#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "qindep/report.hpp"

using namespace qindep;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// ctest runs in the build directory, next to the CLI binary
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("QINDEP_BIN");
    std::string cmd = std::string(bin ? bin : "./qindep") + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

RealBall rb(const mpq_class& v, unsigned bits = 64) {
    return RealBall::from_rational(v, Precision(bits));
}

} // namespace

TEST_CASE("decimal_string renders dyadic values exactly") {
    CHECK(decimal_string(rb(mpq_class(3, 2)).mid()) == "1.5");
    CHECK(decimal_string(rb(0).mid()) == "0");
    CHECK(decimal_string(rb(mpq_class(-1, 4)).mid()) == "-0.25");
    CHECK(decimal_string(rb(12345).mid()) == "12345");
    CHECK(decimal_string(rb(mpq_class(1, 1024)).mid()) == "0.0009765625");
}

TEST_CASE("ball serialization of an exact value") {
    Json j = ball_json(rb(mpq_class(3, 2)));
    CHECK(j["mid"] == "1.5");
    CHECK(j["rad"] == "0");
    CHECK(render_json(j) == "{\"mid\":\"1.5\",\"rad\":\"0\"}\n");
}

TEST_CASE("json rendering sorts keys and is stable") {
    Json j;
    j["zebra"] = 1;
    j["apple"] = 2;
    std::string s = render_json(j);
    CHECK(s == "{\"apple\":2,\"zebra\":1}\n");
    CHECK(render_json(j) == s);
}

TEST_CASE("report skeleton carries schema, command, inputs and precision") {
    Json rep = make_report("eval", Json{{"q", "2"}}, Json{{"rows", Json::array()}}, 128);
    CHECK(rep["schema"] == 1);
    CHECK(rep["command"] == "eval");
    CHECK(rep["precision_used"] == 128);
    CHECK(rep["result"]["rows"].is_array());
    CHECK(rep["result"]["rows"].empty());
}

TEST_CASE("text rendering produces one line per scalar") {
    Json rep = make_report("height", Json{{"alpha", "1"}}, Json{{"norm", "1"}}, 64);
    std::string t = render_text(rep);
    CHECK(t.find("command") != std::string::npos);
    CHECK(t.find("height") != std::string::npos);
    CHECK(t.find("norm") != std::string::npos);
}

TEST_CASE("cli: identical invocations are byte-identical") {
    auto a = run_cli("eval --fn zetaq1 --q 2 --prec 96");
    auto b = run_cli("eval --fn zetaq1 --q 2 --prec 96");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json rep = Json::parse(a.out);
    CHECK(rep["schema"] == 1);
    CHECK(rep["result"]["value"].contains("re"));
}

TEST_CASE("cli: the echoed inputs block replays to the same report") {
    for (std::string args : {
             std::string("eval --fn eq --q 2 --x 1 --prec 96"),
             std::string("check --theorem cor1_3 --q 2 --alpha 1 --prec 64"),
             std::string("height --q \"x^2-x-1\" --alpha \"[0,1]\" --prec 64"),
             std::string("xn-trace --theorem 1 --q 2 --poly-p x-1 --alphas \"[1]\" "
                         "--lambda \"0;1\" --n 1..4 --prec 64"),
         }) {
        auto first = run_cli(args);
        REQUIRE(first.code == 0);
        Json rep = Json::parse(first.out);
        std::string cfg = "cli_roundtrip_cfg.json";
        std::ofstream(cfg) << rep["inputs"].dump();
        std::string cmd = args.substr(0, args.find(' '));
        auto second = run_cli(cmd + " --config " + cfg);
        CHECK(second.code == first.code);
        CHECK(second.out == first.out);
        std::remove(cfg.c_str());
    }
}

TEST_CASE("cli: exit status discipline") {
    // satisfied hypotheses
    CHECK(run_cli("check --theorem cor1_3 --q 2 --alpha 1").code == 0);
    // hypothesis failure is 3, not a tool error
    CHECK(run_cli("check --theorem cor1_3 --q 2 --alpha 5").code == 3);
    // pv rejection is also a mathematical failure
    CHECK(run_cli("check --theorem cor1_3 --q \"x^2-3\" --alpha 1").code == 3);
    // boundary equality cannot be certified either way
    CHECK(run_cli("check --theorem cor1_3 --q \"x^2-x-1\" --alpha \"[0,1]\"").code == 2);
    // usage errors
    CHECK(run_cli("eval --fn nosuch --q 2").code == 1);
    CHECK(run_cli("nosuchcommand").code == 1);
    CHECK(run_cli("eval --q 2").code == 1);
    // domain violations surface at evaluation, exit as errors
    CHECK(run_cli("eval --fn lq --q 2 --x 3").code == 1);
}

TEST_CASE("cli: field report certifies the quartic pv example") {
    auto r = run_cli("field --poly \"x^4-x^3-2*x^2+1\" --prec 64");
    REQUIRE(r.code == 0);
    Json rep = Json::parse(r.out);
    CHECK(rep["result"]["degree"] == 4);
    CHECK(rep["result"]["pv"]["is_pv"] == true);
    CHECK(rep["result"]["roots"].size() == 4);
}

TEST_CASE("cli: eval honors QINDEP_DEFAULT_PREC") {
    const char* bin = std::getenv("QINDEP_BIN");
    std::string cmd = std::string("QINDEP_DEFAULT_PREC=96 ") + (bin ? bin : "./qindep") +
                      " eval --fn eq --q 2 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    Json rep = Json::parse(out);
    CHECK(rep["precision_used"] == 96);
}

TEST_CASE("cli: text output mode renders without json braces up front") {
    auto r = run_cli("height --q 2 --alpha 3 --output text");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("{", 0) != 0);
    CHECK(r.out.find("norm") != std::string::npos);
}

TEST_CASE("cli: relations subcommand reports a planted relation") {
    std::string spec = "cli_vals.json";
    std::ofstream(spec) << R"({"field":{"poly":"x-2"},
        "values":[{"kind":"constant","value":"1"},
                  {"kind":"constant","value":"2/3"},
                  {"kind":"constant","value":"7/3"}]})";
    auto r = run_cli("relations --values-spec " + spec + " --max-height 50 --prec 128");
    std::remove(spec.c_str());
    REQUIRE(r.code == 0);
    Json rep = Json::parse(r.out);
    CHECK(rep["result"]["status"] == "relation_found");
    CHECK(rep["result"]["coefficients"].size() == 3);
}

TEST_CASE("cli: xn-trace reports growing norms for the harmonic instance") {
    auto r = run_cli("xn-trace --theorem 1 --q 2 --poly-p x-1 --alphas \"[1]\" "
                     "--lambda \"0;1\" --n 1..8 --prec 64");
    REQUIRE(r.code == 0);
    Json rep = Json::parse(r.out);
    CHECK(rep["result"]["dichotomy"]["classification"] == "growing");
    CHECK(rep["result"]["rows"].size() == 8);
    CHECK(rep["result"]["rows"][3]["norm"] == "751");
}
