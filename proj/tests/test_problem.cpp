#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "videq/problem.hpp"

using namespace videq;

namespace {

const std::string kEx2Text = R"(# worked example 2
T = 2
beta = 5
w0 = 1.25
c = 1, 1, 1, 1
tk = 0.5, 1, 1.5, 2
LF = 0.01
LG = 1
F = 2/10 - t^2/1000 - (9-t)/1000 + cos(w)/100 - wp/100 + I/100
G = (1+2*s)/10*sin(w) + wp
)";

}  // namespace

TEST_CASE("built-in examples validate cleanly") {
    for (const auto& id : builtin_ids()) {
        Problem p = builtin_example(id);
        CHECK(validate(p).empty());
    }
    CHECK_THROWS_AS(builtin_example("ex3"), LoadError);
}

TEST_CASE("validate reports each violated invariant") {
    Problem p = builtin_example("ex1");
    CHECK(p.sum_c() == 2.0);
    CHECK(validate(p).empty());

    Problem bad = p;
    bad.c = {-2.0, 1.0};
    bad.tk = {0.5, 1.0};
    auto v = validate(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "sum of c equals -1");

    bad = p;
    bad.beta = 1.0;
    v = validate(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "beta must exceed 1");

    bad = p;
    bad.tk = {0.2, 0.2, 0.6, 0.8, 1.0};
    CHECK_FALSE(validate(bad).empty());

    bad = p;
    bad.tk = {0.2, 0.4, 0.6, 0.8, 1.5};
    CHECK_FALSE(validate(bad).empty());
}

TEST_CASE("load_problem parses the documented format") {
    Problem p = load_problem(kEx2Text);
    CHECK(p.T == 2.0);
    CHECK(p.beta == 5.0);
    CHECK(p.w0 == 1.25);
    CHECK(p.c.size() == 4);
    CHECK(p.tk == std::vector<double>{0.5, 1.0, 1.5, 2.0});
    CHECK(p.LF == 0.01);
    CHECK(p.LG == 1.0);
    CHECK(p.F == builtin_example("ex2").F);
    CHECK(p.G == builtin_example("ex2").G);
}

TEST_CASE("loader error paths") {
    std::string no_g = "T = 1\nbeta = 2\nw0 = 0\nc = 1\ntk = 1\nLF = 0\nLG = 0\nF = 0\n";
    CHECK_THROWS_WITH_AS(load_problem(no_g), "missing key G", LoadError);

    std::string mismatch =
        "T = 1\nbeta = 2\nw0 = 0\nc = 1, 1\ntk = 0.5\nLF = 0\nLG = 0\nF = 0\nG = 0\n";
    CHECK_THROWS_AS(load_problem(mismatch), LoadError);

    std::string dup = kEx2Text + "T = 3\n";
    CHECK_THROWS_AS(load_problem(dup), LoadError);

    std::string unknown = kEx2Text + "bogus = 3\n";
    CHECK_THROWS_AS(load_problem(unknown), LoadError);

    std::string bad_num = "T = abc\nbeta = 2\nw0 = 0\nc = 1\ntk = 1\nLF = 0\nLG = 0\nF = 0\nG = 0\n";
    CHECK_THROWS_AS(load_problem(bad_num), LoadError);

    std::string bad_expr =
        "T = 1\nbeta = 2\nw0 = 0\nc = 1\ntk = 1\nLF = 0\nLG = 0\nF = t +\nG = 0\n";
    CHECK_THROWS_AS(load_problem(bad_expr), LoadError);

    // F may not reference the kernel integration variable
    std::string wrong_var =
        "T = 1\nbeta = 2\nw0 = 0\nc = 1\ntk = 1\nLF = 0\nLG = 0\nF = s\nG = 0\n";
    CHECK_THROWS_AS(load_problem(wrong_var), LoadError);
}

TEST_CASE("serializer round-trips every built-in") {
    for (const auto& id : builtin_ids()) {
        Problem p = builtin_example(id);
        Problem q = load_problem(serialize(p));
        CHECK(q.T == p.T);
        CHECK(q.beta == p.beta);
        CHECK(q.w0 == p.w0);
        CHECK(q.c == p.c);
        CHECK(q.tk == p.tk);
        CHECK(q.LF == p.LF);
        CHECK(q.LG == p.LG);
        CHECK(q.F == p.F);
        CHECK(q.G == p.G);
        CHECK(q.label == p.label);
    }
}

TEST_CASE("optional keys survive the round trip") {
    std::string text = kEx2Text + "gamma = 1.5\nN = 200\ntol = 1e-9\nmax_iter = 50\n";
    Problem p = load_problem(text);
    CHECK(p.gamma == 1.5);
    CHECK(p.N == 200);
    CHECK(p.tol == 1e-9);
    CHECK(p.max_iter == 50);
    Problem q = load_problem(serialize(p));
    CHECK(q.gamma == p.gamma);
    CHECK(q.N == p.N);
    CHECK(q.tol == p.tol);
    CHECK(q.max_iter == p.max_iter);
}

TEST_CASE("built-in field values") {
    Problem ex1 = builtin_example("ex1");
    CHECK(ex1.beta == doctest::Approx(1.1051709180756477).epsilon(1e-15));
    CHECK(ex1.T == 1.0);
    CHECK(ex1.c == std::vector<double>{1, 1, -1, 0, 1});
    CHECK(ex1.LG == doctest::Approx((1 + std::exp(0.1)) / 10).epsilon(1e-15));
    CHECK(ex1.w0 == doctest::Approx(3.1043465).epsilon(1e-7));

    Problem ex2 = builtin_example("ex2");
    CHECK(ex2.c == std::vector<double>{1, 1, 1, 1});
    CHECK(ex2.sum_c() == 4.0);
    CHECK(ex2.w0 == 1.25);
    CHECK(ex2.T == 2.0);
    CHECK(ex2.beta == 5.0);

    // the self-consistent nonlocal datum: w(0) + sum c_k w(t_k) for w = exp(t/10)
    double w0 = 1.0;
    std::vector<double> tk = {0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> c = {1, 1, -1, 0, 1};
    for (std::size_t k = 0; k < c.size(); ++k) w0 += c[k] * std::exp(tk[k] / 10.0);
    CHECK(ex1.w0 == doctest::Approx(w0).epsilon(1e-15));

    // and for w = (t + t^2)/10 at tk = [0.5, 1, 1.5, 2]
    double w0b = 0.0;
    for (double t : {0.5, 1.0, 1.5, 2.0}) w0b += (t + t * t) / 10.0;
    CHECK(ex2.w0 == w0b);
}
