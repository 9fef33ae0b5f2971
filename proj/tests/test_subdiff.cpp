#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gencvx/errors.hpp"
#include "gencvx/fixtures.hpp"
#include "gencvx/subdiff.hpp"
#include "support.hpp"

using namespace gencvx;

namespace {

const Vec kOrigin{0.0};

SubdiffParams params_for(const FunctionModel& f, double u, std::uint64_t seed = 11) {
    return SubdiffParams::for_direction(f, Direction{{u}}, seed);
}

double set_tolerance(const ExactSet1d& exact) { return 1e-2 * (1.0 + exact.width()); }

void check_against_exact(const SetEstimate& est, const ExactSet1d& exact) {
    if (exact.is_empty()) {
        CHECK(est.is_certified_empty);
        CHECK(est.cloud.empty());
        return;
    }
    CHECK_FALSE(est.is_certified_empty);
    CHECK(hausdorff_estimate_vs_exact(est, exact) <= set_tolerance(exact));
}

} // namespace

TEST_CASE("scalarize reproduces the gradient pairing") {
    const auto m35 = fixture_model("ex3.5");
    const ScalarFn g = scalarize(*m35, Direction{{1.0}});
    CHECK(g(std::vector<double>{0.7}) == 0.7);    // |y| at y = 0.7
    CHECK(g(std::vector<double>{-0.7}) == 0.7);

    const auto m48 = fixture_model("ex4.8");
    const ScalarFn h = scalarize(*m48, Direction{{1.0}});
    CHECK(h(std::vector<double>{-0.5}) == -0.5);  // y for y <= 0
    CHECK(h(std::vector<double>{0.5}) == 3.0);    // 6y for y > 0
}

TEST_CASE("limiting estimate of |y| at 0 recovers [-1, 1]") {
    const auto m35 = fixture_model("ex3.5");
    SubdiffParams p = params_for(*m35, 1.0);
    const SetEstimate est = limiting_subdiff_estimate(scalarize(*m35, Direction{{1.0}}), kOrigin, p);
    REQUIRE(est.hull_1d.has_value());
    CHECK((*est.hull_1d)[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK((*est.hull_1d)[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hausdorff_estimate_vs_exact(est, ExactSet1d::interval(-1.0, 1.0)) <= 0.02);
}

TEST_CASE("limiting estimate of a linear scalar map is its slope") {
    FunctionSpec s;
    s.name = "lin";
    s.dimension = 1;
    s.value = Expr::parse("1.5*x1^2");
    s.gradient = {Expr::parse("3*x1")};
    const FunctionModel f(s);
    SubdiffParams p = params_for(f, 1.0);
    const SetEstimate est = limiting_subdiff_estimate(scalarize(f, Direction{{1.0}}), Vec{0.4}, p);
    REQUIRE(est.hull_1d.has_value());
    CHECK((*est.hull_1d)[0] == doctest::Approx(3.0).epsilon(1e-5));
    CHECK((*est.hull_1d)[1] == doctest::Approx(3.0).epsilon(1e-5));
}

TEST_CASE("piecewise-linear gradient map yields the two-point limit set") {
    const auto m48 = fixture_model("ex4.8");
    SubdiffParams p = params_for(*m48, -1.0);
    const SetEstimate est =
        limiting_subdiff_estimate(scalarize(*m48, Direction{{-1.0}}), kOrigin, p);
    CHECK(hausdorff_estimate_vs_exact(est, ExactSet1d::finite({-1.0, -6.0})) <= 0.07);
    CHECK(est.frechet_part.empty());
}

TEST_CASE("frechet membership: spec cases") {
    const auto m35 = fixture_model("ex3.5");

    SUBCASE("0 belongs to the subdifferential of |y| at 0") {
        SubdiffParams p = params_for(*m35, 1.0);
        const MembershipResult r =
            frechet_membership(scalarize(*m35, Direction{{1.0}}), kOrigin, Vec{0.0}, p);
        CHECK(r.status == Membership::Verified);
    }
    SUBCASE("z = -1 verified for u = 1; everything rejected for u = -1") {
        SubdiffParams p = params_for(*m35, 1.0);
        CHECK(frechet_membership(scalarize(*m35, Direction{{1.0}}), kOrigin, Vec{-1.0}, p).status ==
              Membership::Verified);
        SubdiffParams pn = params_for(*m35, -1.0);
        const ScalarFn gn = scalarize(*m35, Direction{{-1.0}});
        for (const double z : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            CAPTURE(z);
            CHECK(frechet_membership(gn, kOrigin, Vec{z}, pn).status == Membership::Rejected);
        }
    }
    SUBCASE("singleton at half the direction for the clamped oscillatory fixture") {
        const auto m49 = fixture_model("ex4.9");
        SubdiffParams p = params_for(*m49, 1.0);
        const ScalarFn g = scalarize(*m49, Direction{{1.0}});
        CHECK(frechet_membership(g, kOrigin, Vec{0.5}, p).status == Membership::Verified);
        const MembershipResult rejected = frechet_membership(g, kOrigin, Vec{1.4}, p);
        CHECK(rejected.status == Membership::Rejected);
        CHECK(rejected.margin < -0.5);
    }
}

TEST_CASE("membership agrees with a brute-force liminf scan") {
    const auto m48 = fixture_model("ex4.8");
    const ScalarFn g = scalarize(*m48, Direction{{1.0}});
    SubdiffParams p = params_for(*m48, 1.0);
    for (const double z : {0.5, 1.0, 2.0, 4.5, 6.0, 6.5}) {
        CAPTURE(z);
        const MembershipResult fast = frechet_membership(g, kOrigin, Vec{z}, p);
        const double brute = testsupport::brute_liminf_quotient(g, kOrigin, Vec{z});
        if (brute >= 1e-4) CHECK(fast.status == Membership::Verified);
        if (brute <= -1e-4) CHECK(fast.status == Membership::Rejected);
        if (fast.status != Membership::Inconclusive)
            CHECK(fast.margin == doctest::Approx(brute).epsilon(0.2).scale(1.0));
    }

    // the zero subgradient of the oscillatory integral fixture, checked the
    // same slow way
    const auto m33 = fixture_model("ex3.3");
    const ScalarFn g33 = scalarize(*m33, Direction{{1.0}});
    SubdiffParams p33 = params_for(*m33, 1.0);
    CHECK(frechet_membership(g33, kOrigin, Vec{0.0}, p33).status == Membership::Verified);
    CHECK(testsupport::brute_liminf_quotient(g33, kOrigin, Vec{0.0}) >= -1e-4);
}

TEST_CASE("second-order frechet estimates match the registry formulas") {
    const Vec origin{0.0};
    for (const auto& fx : load_fixtures()) {
        if (!fx.frechet2_at0) continue;
        const auto model = fixture_model(fx.spec.name);
        for (const double u : {1.0, -1.0, 2.0, -2.0}) {
            CAPTURE(fx.spec.name);
            CAPTURE(u);
            const SetEstimate est = second_order_frechet(*model, origin, Direction{{u}}, 11);
            check_against_exact(est, *fx.exact_frechet2(origin, u));
        }
    }
}

TEST_CASE("second-order mordukhovich estimates match the registry formulas") {
    const Vec origin{0.0};
    for (const auto& fx : load_fixtures()) {
        if (!fx.mordukhovich2_at0) continue;
        const auto model = fixture_model(fx.spec.name);
        for (const double u : {1.0, -1.0, 2.0, -2.0}) {
            CAPTURE(fx.spec.name);
            CAPTURE(u);
            const SetEstimate est = second_order_mordukhovich(*model, origin, Direction{{u}}, 11);
            CHECK_FALSE(est.cloud.empty());  // limiting sets are nonempty
            check_against_exact(est, *fx.exact_mordukhovich2(origin, u));
        }
    }
}

TEST_CASE("emptiness certificates match the registry exactly") {
    const Vec origin{0.0};
    const struct {
        const char* name;
        double u;
        bool empty;
    } cases[] = {
        {"ex3.5", 1.0, false}, {"ex3.5", -1.0, true},  {"ex3.5", -2.0, true},
        {"ex4.3b", 1.0, true}, {"ex4.3b", -1.0, true}, {"ex4.3b", 2.0, true},
        {"ex4.8", 1.0, false}, {"ex4.8", -1.0, true},  {"ex4.8", -2.0, true},
        {"ex4.9", 1.0, false}, {"ex4.9", -1.0, false},
        {"ex3.3", 1.0, false}, {"ex3.3", -1.0, false},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        CAPTURE(c.u);
        const auto model = fixture_model(c.name);
        const SetEstimate est = second_order_frechet(*model, origin, Direction{{c.u}}, 11);
        CHECK(est.is_certified_empty == c.empty);
    }
}

TEST_CASE("C2 reduction: both estimates collapse onto the hessian product") {
    Rng rng(5150);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto quad = testsupport::Quadratic::random(n, rng);
        const FunctionModel f(quad.to_spec("quad"));
        Vec x(n), u;
        for (int d = 0; d < n; ++d) x[d] = rng.uniform(-1.0, 1.0);
        u = n == 1 ? Vec{rng.uniform() < 0.5 ? 1.0 : -1.0} : rng.unit_vector(n);
        CAPTURE(trial);
        CAPTURE(n);

        const Vec expect = quad.apply(u);
        const Vec fd = testsupport::fd_hessian_vec(f, x, u);
        CHECK(dist2(expect, fd) <= 1e-6 * (1.0 + norm2(expect)));  // oracle self-check

        const SetEstimate mord = second_order_mordukhovich(f, x, Direction{u}, 17);
        const SetEstimate fre = second_order_frechet(f, x, Direction{u}, 17);
        for (const SetEstimate* est : {&mord, &fre}) {
            REQUIRE_FALSE(est->cloud.empty());
            for (const auto& z : est->cloud) CHECK(dist2(z, expect) <= 1e-4 * (1.0 + norm2(expect)));
        }
        CHECK_FALSE(fre.frechet_part.empty());
    }
}

TEST_CASE("C2 reduction beyond quadratics: quartic test functions") {
    // 1-d quartic
    {
        FunctionSpec s;
        s.name = "quartic1d";
        s.dimension = 1;
        s.value = Expr::parse("0.25*x1^4 - 0.5*x1^2 + 0.3*x1");
        s.gradient = {Expr::parse("x1^3 - x1 + 0.3")};
        const FunctionModel f(s);
        const Vec x{0.8};
        const Vec u{1.0};
        const Vec hv = testsupport::fd_hessian_vec(f, x, u);  // 3x^2 - 1 = 0.92
        CHECK(hv[0] == doctest::Approx(0.92).epsilon(1e-6));
        const SetEstimate mord = second_order_mordukhovich(f, x, Direction{u}, 23);
        const SetEstimate fre = second_order_frechet(f, x, Direction{u}, 23);
        for (const SetEstimate* est : {&mord, &fre}) {
            REQUIRE_FALSE(est->cloud.empty());
            for (const auto& z : est->cloud) CHECK(std::fabs(z[0] - 0.92) <= 1e-2 * (1.0 + 0.92));
        }
    }
    // 2-d polynomial with a cross term
    {
        FunctionSpec s;
        s.name = "cross2d";
        s.dimension = 2;
        s.value = Expr::parse("x1^4/4 + x1*x2 + x2^2");
        s.gradient = {Expr::parse("x1^3 + x2"), Expr::parse("x1 + 2*x2")};
        const FunctionModel f(s);
        const Vec x{0.5, -0.3};
        const Vec u{0.6, 0.8};
        const Vec expect = testsupport::fd_hessian_vec(f, x, u);
        const SetEstimate fre = second_order_frechet(f, x, Direction{u}, 23);
        REQUIRE_FALSE(fre.frechet_part.empty());
        for (const auto& z : fre.frechet_part)
            CHECK(dist2(z, expect) <= 1e-2 * (1.0 + norm2(expect)));
    }
}

TEST_CASE("inclusion: verified frechet points sit inside the limiting hull") {
    const Vec origin{0.0};
    for (const auto& fx : load_fixtures()) {
        const auto model = fixture_model(fx.spec.name);
        for (const double u : {1.0, -1.0}) {
            CAPTURE(fx.spec.name);
            CAPTURE(u);
            const SetEstimate mord = second_order_mordukhovich(*model, origin, Direction{{u}}, 13);
            const SetEstimate fre = second_order_frechet(*model, origin, Direction{{u}}, 13);
            if (!mord.hull_1d) continue;
            const double lo = (*mord.hull_1d)[0];
            const double hi = (*mord.hull_1d)[1];
            const double eps = 1e-2 * (1.0 + (hi - lo));
            for (const auto& z : fre.frechet_part) {
                CHECK(z[0] >= lo - eps);
                CHECK(z[0] <= hi + eps);
            }
        }
    }
}

TEST_CASE("positive homogeneity of degree one in the direction") {
    const Vec origin{0.0};
    for (const char* name : {"ex3.3", "ex3.5", "ex4.8", "ex4.9"}) {
        const auto model = fixture_model(name);
        CAPTURE(name);
        const SetEstimate one = second_order_mordukhovich(*model, origin, Direction{{1.0}}, 19);
        const SetEstimate two = second_order_mordukhovich(*model, origin, Direction{{2.0}}, 19);
        REQUIRE(one.hull_1d.has_value());
        REQUIRE(two.hull_1d.has_value());
        const double w = (*two.hull_1d)[1] - (*two.hull_1d)[0];
        const double eps = 1e-2 * (1.0 + w);
        CHECK(std::fabs(2.0 * (*one.hull_1d)[0] - (*two.hull_1d)[0]) <= eps);
        CHECK(std::fabs(2.0 * (*one.hull_1d)[1] - (*two.hull_1d)[1]) <= eps);
    }
}

TEST_CASE("zero direction short-circuits to the zero singleton") {
    const auto model = fixture_model("ex3.3");
    for (const bool frechet : {false, true}) {
        const SetEstimate est = frechet
                                    ? second_order_frechet(*model, kOrigin, Direction{{0.0}}, 3)
                                    : second_order_mordukhovich(*model, kOrigin, Direction{{0.0}}, 3);
        REQUIRE(est.cloud.size() == 1);
        CHECK(est.cloud[0][0] == 0.0);
        CHECK_FALSE(est.is_certified_empty);
    }
}

TEST_CASE("degenerate sampling raises instead of returning junk") {
    // scalar map undefined on one whole side of the base point
    FunctionSpec s;
    s.name = "halfline";
    s.dimension = 1;
    s.value = Expr::parse("x1^2");
    s.gradient = {Expr::parse("sqrt(x1)")};  // fails for x1 < 0
    const FunctionModel f(s);
    SubdiffParams p = params_for(f, 1.0);
    CHECK_THROWS_AS(
        (void)limiting_subdiff_estimate(scalarize(f, Direction{{1.0}}), Vec{-1.0}, p),
        DegenerateSampling);
}
