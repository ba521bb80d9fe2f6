#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "padicgb/cli.hpp"

using namespace padicgb;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path("padicgb_test_" + name) {
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

const char* kLiftSystem =
    "field: qp 5\n"
    "vars: x y z\n"
    "order: grevlex\n"
    "10*x\n"
    "25*x*y^2 + y^3 + z^3\n";

}  // namespace

TEST_CASE("gb on the lifting example prints the computed basis") {
    TempFile sys("lift.sys", kLiftSystem);
    std::string out;
    int code = run({"gb", "--p", "5", "--prec", "4", sys.path}, &out);
    REQUIRE(code == 0);
    CHECK(out.find("(10 + O(5^4))*x") != std::string::npos);
    CHECK(out.find("(1 + O(5^4))*y^3 + (1 + O(5^4))*z^3") != std::string::npos);
    // the coordinate entry carries the quotient's certified precision
    CHECK(out.find("O(5^3)") != std::string::npos);
}

TEST_CASE("prec reports both bounds") {
    TempFile sys("prec.sys",
                 "field: qp 5\n"
                 "vars: x y z\n"
                 "5*x\n"
                 "y\n"
                 "25*x*y + z^2\n");
    std::string out;
    int code = run({"prec", "--degree-cap", "2", sys.path}, &out);
    REQUIRE(code == 0);
    CHECK(out.find("prec_MF5 = 3") != std::string::npos);
    CHECK(out.find("prec_Mac = 2") != std::string::npos);
}

TEST_CASE("gb json output feeds the lift subcommand") {
    TempFile sys("pipeline.sys", kLiftSystem);
    std::string json_text;
    int code = run({"gb", "--prec", "4", "--out", "json", sys.path}, &json_text);
    REQUIRE(code == 0);
    Json j = Json::parse(json_text);
    CHECK(j.at("schema") == "padicgb/1");
    CHECK(j.at("basis").size() == 2);

    TempFile saved("saved.json", json_text);
    std::string out;
    code = run({"lift", "--from", saved.path, "--exact", sys.path}, &out);
    REQUIRE(code == 0);
    CHECK(out.find("10*x") != std::string::npos);
    CHECK(out.find("y^3 + z^3") != std::string::npos);

    std::string out8;
    code = run({"lift", "--from", saved.path, "--lift-prec", "8", sys.path}, &out8);
    REQUIRE(code == 0);
    CHECK(out8.find("y^3") != std::string::npos);
}

TEST_CASE("oracle subcommand with structure checks") {
    TempFile sys("oracle.sys",
                 "field: qp 7\n"
                 "vars: x y z\n"
                 "x + y\n"
                 "x*y + y^2 + z^2\n");
    std::string out;
    int code = run({"oracle", "--check", sys.path}, &out);
    REQUIRE(code == 0);
    CHECK(out.find("regular sequence (H1): yes") != std::string::npos);
    CHECK(out.find("weakly-w ideals (H2):  no") != std::string::npos);
}

TEST_CASE("exit codes distinguish failure classes") {
    SECTION("empty input is a parse error") {
        TempFile sys("empty.sys", "");
        std::string err;
        CHECK(run({"gb", sys.path}, nullptr, &err) == 1);
        CHECK(!err.empty());
    }
    SECTION("missing file is a parse error") {
        CHECK(run({"gb", "no_such_file.sys"}) == 1);
    }
    SECTION("structure failure maps to exit code 2") {
        TempFile sys("h2fail.sys",
                     "field: qp 7\n"
                     "prec: 12\n"
                     "vars: x y z\n"
                     "x + y\n"
                     "x*y + y^2 + z^2\n");
        std::string err;
        CHECK(run({"gb", sys.path}, nullptr, &err) == 2);
        CHECK(err.find("weakly-w") != std::string::npos);
    }
    SECTION("bad flags are usage errors") {
        CHECK(run({"gb", "--order", "weird", "x.sys"}) == 1);
        CHECK(run({"nonsense"}) == 1);
    }
}

TEST_CASE("experiment and diff subcommands are reproducible") {
    std::string a, b;
    std::vector<std::string> args = {"experiment", "--degrees", "2,2", "--degree-cap", "3",
                                     "--p",        "7",        "--prec",    "10",
                                     "--trials",   "2",        "--seed",    "77",
                                     "--out",      "json"};
    REQUIRE(run(args, &a) == 0);
    REQUIRE(run(args, &b) == 0);
    CHECK(a == b);
    Json j = Json::parse(a);
    CHECK(j.at("trials").size() == 2);

    std::string d;
    int code = run({"diff", "--degrees", "2,2", "--degree-cap", "3", "--p", "7", "--prec", "10",
                    "--trials", "1", "--seed", "5"},
                   &d);
    REQUIRE(code == 0);
    CHECK(d.find("difference") != std::string::npos);
    CHECK(d.find("differential") != std::string::npos);
}

TEST_CASE("method selection") {
    TempFile sys("methods.sys",
                 "field: qp 5\n"
                 "prec: 10\n"
                 "vars: x y z\n"
                 "5*x\n"
                 "y\n"
                 "25*x*y + z^2\n");
    std::string matrix_out;
    REQUIRE(run({"gb", "--method", "matrix", "--degree-cap", "2", sys.path}, &matrix_out) == 0);
    CHECK(matrix_out.find("prec_Mac bound = 2") != std::string::npos);

    TempFile affine("affine.sys",
                    "field: qp 5\n"
                    "prec: 10\n"
                    "vars: x y z\n"
                    "x - 1\n"
                    "x*y^2 + y^3 + z^3\n");
    std::string affine_out;
    REQUIRE(run({"gb", "--method", "affine", affine.path}, &affine_out) == 0);
    CHECK(affine_out.find("y^3") != std::string::npos);
    CHECK(affine_out.find("y^2") != std::string::npos);
}

TEST_CASE("gb over a power-series field") {
    TempFile sys("fpt.sys",
                 "field: fpt 7\n"
                 "prec: 6\n"
                 "vars: x y z\n"
                 "x\n"
                 "x*y^2 + y^3 + z^3\n");
    std::string out;
    int code = run({"gb", sys.path}, &out);
    REQUIRE(code == 0);
    CHECK(out.find("O(t^6)") != std::string::npos);
    CHECK(out.find("y^3") != std::string::npos);
}
