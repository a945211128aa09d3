#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "videq/expr.hpp"

using namespace videq;

namespace {

const std::set<std::string> kVars = {"t", "w", "wp", "I"};

}  // namespace

TEST_CASE("parse builds the expected trees") {
    CHECK(parse("t + w", kVars) == parse("(t + w)", kVars));
    CHECK(parse("sin(w)/100", kVars) == parse("(sin(w) / 100)", kVars));
    CHECK(parse("t + w * I", kVars) == parse("t + (w * I)", kVars));
    CHECK_FALSE(parse("t + w * I", kVars) == parse("(t + w) * I", kVars));
}

TEST_CASE("unknown variable is rejected") {
    CHECK_THROWS_AS(parse("t + q", {"t", "w"}), ParseError);
    CHECK_THROWS_AS(parse("foo(t)", {"t"}), ParseError);
    CHECK_THROWS_AS(parse("", kVars), ParseError);
    CHECK_THROWS_AS(parse("   ", kVars), ParseError);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse("t + ", kVars);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse("t )", kVars), ParseError);
    CHECK_THROWS_AS(parse("(t", kVars), ParseError);
    CHECK_THROWS_AS(parse("1..2", kVars), ParseError);
}

TEST_CASE("unary minus binds looser than '^' and tighter than '*'") {
    Expression e = parse("-t^2", {"t"});
    CHECK(e.evaluate({{"t", 3.0}}) == -9.0);
    CHECK(parse("2*-t", {"t"}).evaluate({{"t", 3.0}}) == -6.0);
    // right-associative power
    CHECK(parse("2^3^2", {}).evaluate({}) == 512.0);
}

TEST_CASE("evaluate matches the standard library") {
    CHECK(parse("exp(t/10)", kVars).evaluate({{"t", 1.0}}) == 1.1051709180756477);
    CHECK(parse("w - wp", kVars).evaluate({{"w", 2.0}, {"wp", 2.0}}) == 0.0);
    CHECK(parse("sinh(t)", kVars).evaluate({{"t", 0.5}}) == std::sinh(0.5));
    CHECK(parse("1e-3 + 0.010540", kVars).evaluate({}) == doctest::Approx(0.01154).epsilon(1e-12));
}

TEST_CASE("pi and e are predefined") {
    CHECK(parse("cos(pi)", {}).evaluate({}) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(parse("log(e)", {}).evaluate({}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("domain errors are reported") {
    CHECK_THROWS_AS(parse("1/ t", kVars).evaluate({{"t", 0.0}}), EvalError);
    CHECK_THROWS_AS(parse("log(t)", kVars).evaluate({{"t", -1.0}}), EvalError);
    CHECK_THROWS_AS(parse("sqrt(t)", kVars).evaluate({{"t", -4.0}}), EvalError);
    CHECK_THROWS_AS(parse("t + w", kVars).evaluate({{"t", 1.0}}), EvalError);
}

TEST_CASE("to_text is fully parenthesized and round-trips") {
    CHECK(parse("t+w*I", kVars).to_text() == "(t + (w * I))");
    CHECK(Expression::literal(2.5).to_text() == "2.5");
    Expression e = parse("sin(w)/100", kVars);
    CHECK(parse(e.to_text(), kVars) == e);
}

namespace {

// Random tree generator for the round-trip property.
struct TreeGen {
    std::mt19937 rng{20240817};
    std::uniform_real_distribution<double> lit{0.1, 4.0};

    std::string make(int depth) {
        static const char* vars[] = {"t", "w", "wp", "I"};
        static const char* funcs[] = {"sin", "cos", "exp", "sinh", "cosh", "abs"};
        static const char ops[] = {'+', '-', '*', '/', '^'};
        int pick = std::uniform_int_distribution<int>(0, depth <= 0 ? 1 : 4)(rng);
        switch (pick) {
        case 0: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", lit(rng));
            return buf;
        }
        case 1:
            return vars[std::uniform_int_distribution<int>(0, 3)(rng)];
        case 2:
            return std::string(funcs[std::uniform_int_distribution<int>(0, 5)(rng)]) + "(" +
                   make(depth - 1) + ")";
        case 3:
            return "(-" + make(depth - 1) + ")";
        default: {
            char op = ops[std::uniform_int_distribution<int>(0, 4)(rng)];
            return "(" + make(depth - 1) + " " + op + " " + make(depth - 1) + ")";
        }
        }
    }
};

}  // namespace

TEST_CASE("round-trip property on 1000 random trees") {
    TreeGen gen;
    Bindings b{{"t", 0.7}, {"w", 1.3}, {"wp", 0.4}, {"I", 2.1}};
    int evaluated = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string text = gen.make(4);
        Expression e = parse(text, kVars);
        Expression round = parse(e.to_text(), kVars);
        CHECK(round == e);
        // precedence oracle: the canonical rendering evaluates identically
        try {
            double a = e.evaluate(b);
            double c = round.evaluate(b);
            if (std::isfinite(a)) {
                CHECK(a == c);
                ++evaluated;
            }
        } catch (const EvalError&) {
            // random trees may divide by zero or overflow a power; skip those
        }
    }
    CHECK(evaluated > 500);
}

TEST_CASE("evaluation is pure") {
    Expression e = parse("sin(w)/100 + t^2", kVars);
    Bindings b{{"t", 1.7}, {"w", 0.3}};
    double first = e.evaluate(b);
    for (int i = 0; i < 10; ++i) CHECK(e.evaluate(b) == first);
}
