#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "gencvx/errors.hpp"
#include "gencvx/expr.hpp"
#include "gencvx/numeric.hpp"
#include "gencvx/quadrature.hpp"

using namespace gencvx;

namespace {

double eval1(const Expr& e, double x, const IntegralResolver* r = nullptr) {
    const std::vector<double> pt{x};
    return e.evaluate(pt, r);
}

// direct resolver without any caching; enough for expression-level tests
struct DirectResolver : IntegralResolver {
    double integrate(const void*, const std::function<double(double)>& f,
                     double upper) const override {
        QuadratureOptions opt;
        opt.abs_tol = 1e-12;
        return adaptive_simpson(f, 0.0, upper, opt);
    }
};

const char* kCorpus[] = {
    "0.5 * x1^2 * sign(x1)",
    "x1",
    "piecewise(x1 > 0 -> 3*x1^2, else -> 0.5*x1^2)",
    "piecewise(x1 > 0 -> 6*x1, else -> x1)",
    "abs(x1)",
    "integral0(piecewise(t = 0 -> 0, else -> 2*t^2 + t^2*sin(1/t)), abs(x1))",
    "piecewise(x1 = 0 -> 0, x1 > 0 -> 2*x1^2 + x1^2*sin(1/x1), else -> -2*x1^2 + x1^2*sin(1/x1))",
    "integral0(piecewise(t = 0 -> 0, t > 0 -> -2*t^2 + t^2*sin(1/t), else -> 2*t^2 + t^2*sin(1/t)), x1)",
    "integral0(piecewise(t = 0 -> 0, else -> -2*t - t*sin(log(abs(t)))), x1)",
    "piecewise(x1 = 0 -> 0, else -> -2*x1 - x1*sin(log(abs(x1))))",
    "integral0(piecewise(t >= 1/pi -> 1/(2*pi), t <= -1/pi -> -1/(2*pi), t = 0 -> 0, else -> t/2 + t^2*sin(1/t)), x1)",
    "x1/2 + x1^2*sin(1/x1)",
    "exp(x1) - sqrt(abs(x2)) + cos(pi*x1)",
    "1e-3*x1 + 2.5E2",
    "-x1^2",
    "e^2 + pi",
};

} // namespace

TEST_CASE("parse: fixture-shaped sources") {
    SUBCASE("signed half-square") {
        const Expr e = Expr::parse("0.5 * x1^2 * sign(x1)");
        CHECK(e.max_variable() == 0);
        CHECK_FALSE(e.uses_integral());
        CHECK(eval1(e, 1.0) == 0.5);
        CHECK(eval1(e, -2.0) == -2.0);
    }
    SUBCASE("bare variable") {
        const Expr e = Expr::parse("x1");
        CHECK(e.max_variable() == 0);
        CHECK(eval1(e, 3.25) == 3.25);
    }
    SUBCASE("two-branch piecewise") {
        const Expr e = Expr::parse("piecewise(x1 > 0 -> 3*x1^2, else -> 0.5*x1^2)");
        CHECK(eval1(e, 2.0) == 12.0);
        CHECK(eval1(e, -2.0) == 2.0);
        CHECK(eval1(e, 0.0) == 0.0);  // else branch at the boundary
    }
}

TEST_CASE("parse: errors carry a valid offset") {
    const char* bad[] = {
        "",
        "(x1",
        "x1 +",
        "piecewise(x1 > 0 -> 1)",      // missing else
        "foo(x1)",
        "x1 ^ x1",                      // exponent must be an integer literal
        "t + 1",                        // t outside integral0
        "integral0(t, integral0(t, x1))",
        "integral0(x1, x1)",            // integrand must use t only
        "piecewise(else -> 1,)",
        "1.2.3 +",
        "x0",
        "2 @ 3",
    };
    for (const char* src : bad) {
        CAPTURE(src);
        try {
            (void)Expr::parse(src);
            FAIL_CHECK("expected ParseError for: " << src);
        } catch (const ParseError& e) {
            CHECK(e.offset <= std::strlen(src));
            CHECK_FALSE(e.message.empty());
        }
    }
}

TEST_CASE("parse: precedence") {
    CHECK(eval1(Expr::parse("-x1^2"), 3.0) == -9.0);            // ^ binds before unary minus
    CHECK(eval1(Expr::parse("2 + 3*x1"), 2.0) == 8.0);
    CHECK(eval1(Expr::parse("2*x1^3"), 2.0) == 16.0);
    CHECK(eval1(Expr::parse("1 - 2 - 3"), 0.0) == -4.0);        // left associative
    CHECK(eval1(Expr::parse("8/4/2"), 0.0) == 1.0);
    CHECK(eval1(Expr::parse("1/(2*pi)"), 0.0) == doctest::Approx(0.15915494309189535).epsilon(1e-15));
}

TEST_CASE("print/parse round-trip is structural identity") {
    for (const char* src : kCorpus) {
        CAPTURE(src);
        const Expr first = Expr::parse(src);
        const Expr second = Expr::parse(first.print());
        CHECK(first.structurally_equal(second));
        CHECK(second.structurally_equal(first));
        CHECK(first.print() == second.print());
    }
}

TEST_CASE("evaluate: spec arithmetic") {
    CHECK(eval1(Expr::parse("0.5 * x1^2 * sign(x1)"), -2.0) == -2.0);
    CHECK(eval1(Expr::parse("abs(x1)"), 0.0) == 0.0);
    CHECK(eval1(Expr::parse("sign(x1)"), 0.0) == 0.0);
    CHECK(eval1(Expr::parse("sign(x1)"), -0.5) == -1.0);
}

TEST_CASE("evaluate: domain errors") {
    CHECK_THROWS_AS(eval1(Expr::parse("log(x1)"), 0.0), DomainError);
    CHECK_THROWS_AS(eval1(Expr::parse("log(x1)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval1(Expr::parse("sqrt(x1)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval1(Expr::parse("1/x1"), 0.0), DomainError);
    CHECK_THROWS_AS(eval1(Expr::parse("integral0(t, x1)"), 1.0), DomainError);  // no resolver
    // piecewise takes the first matching branch only; the guarded branch
    // never evaluates the log
    const Expr guarded = Expr::parse("piecewise(x1 = 0 -> 0, else -> log(abs(x1)))");
    CHECK(eval1(guarded, 0.0) == 0.0);
}

TEST_CASE("evaluate: integral0 agrees with an independent quadrature route") {
    const DirectResolver direct;
    const Expr e =
        Expr::parse("integral0(piecewise(t = 0 -> 0, else -> 2*t^2 + t^2*sin(1/t)), x1)");
    const double up = 1.0 / 3.141592653589793;
    const double via_simpson = eval1(e, up, &direct);

    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    auto integrand = [](double t) {
        return t == 0.0 ? 0.0 : 2.0 * t * t + t * t * std::sin(1.0 / t);
    };
    const double via_gk = adaptive_gauss_kronrod(integrand, 0.0, up, opt);
    CHECK(std::fabs(via_simpson - via_gk) <= 1e-10);
}

TEST_CASE("evaluate: determinism is bitwise") {
    const Expr e = Expr::parse(
        "piecewise(x1 = 0 -> 0, x1 > 0 -> 2*x1^2 + x1^2*sin(1/x1), else -> -2*x1^2 + x1^2*sin(1/x1))");
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-2.0, 2.0);
        const double a = eval1(e, x);
        const double b = eval1(e, x);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}

TEST_CASE("parser totality under fuzzing") {
    Rng rng(20240808);
    const char alphabet[] = "x1t els->()+-*/^.,0123456789 piecwsgnqr";
    int parsed = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        std::string s;
        const int len = static_cast<int>(rng.below(60));
        for (int i = 0; i < len; ++i) s += alphabet[rng.below(sizeof alphabet - 1)];
        try {
            const Expr e = Expr::parse(s);
            ++parsed;
            // valid parses must round-trip
            CHECK(Expr::parse(e.print()).structurally_equal(e));
        } catch (const ParseError& err) {
            CHECK(err.offset <= s.size());
        }
    }
    CHECK(parsed >= 0);  // no crash is the property under test
}
