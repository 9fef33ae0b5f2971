#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gencvx/conditions.hpp"
#include "gencvx/fixtures.hpp"
#include "support.hpp"

using namespace gencvx;

namespace {

std::vector<ScanPoint> scan_fixture(const FunctionModel& f, int density = 41) {
    ScanParams sp;
    sp.grid_density = density;
    sp.random_count = 2 * density;
    sp.seed = 5;
    return scan_points(f, sp);
}

ConditionParams default_params() {
    ConditionParams cp;
    cp.seed = 5;
    return cp;
}

ConditionsResult run_fixture(const char* name) {
    const auto model = fixture_model(name);
    return evaluate_conditions(*model, scan_fixture(*model), default_params());
}

const ConditionVerdict& verdict(const ConditionsResult& r, ConditionId id) {
    for (const auto& v : r.verdicts)
        if (v.condition_id == id) return v;
    static ConditionVerdict dummy;
    return dummy;
}

FunctionModel negated_square() {
    FunctionSpec s;
    s.name = "neg_square";
    s.dimension = 1;
    s.value = Expr::parse("-x1^2");
    s.gradient = {Expr::parse("-2*x1")};
    s.grad_lipschitz = 2.0;
    return FunctionModel(s);
}

FunctionModel monotone_cubic_plus() {
    // strictly increasing with gradient bounded away from zero
    FunctionSpec s;
    s.name = "monotone";
    s.dimension = 1;
    s.value = Expr::parse("x1^3/3 + 2*x1");
    s.gradient = {Expr::parse("x1^2 + 2")};
    s.grad_lipschitz = 4.0;
    return FunctionModel(s);
}

FunctionModel convex_quadratic_2d() {
    FunctionSpec s;
    s.name = "convex2d";
    s.dimension = 2;
    s.value = Expr::parse("x1^2 + 0.5*x2^2 + x1");
    s.gradient = {Expr::parse("2*x1 + 1"), Expr::parse("x2")};
    s.grad_lipschitz = 2.0;
    return FunctionModel(s);
}

} // namespace

TEST_CASE("condition id wire names") {
    CHECK(std::string(condition_id_name(ConditionId::NecQc32)) == "NEC_QC_3.2");
    CHECK(std::string(condition_id_name(ConditionId::NecPc34)) == "NEC_PC_3.4");
    CHECK(std::string(condition_id_name(ConditionId::SufSpc42)) == "SUF_SPC_4.2");
    CHECK(std::string(condition_id_name(ConditionId::SufSqc44)) == "SUF_SQC_4.4");
    CHECK(std::string(condition_id_name(ConditionId::SufSpc46)) == "SUF_SPC_4.6");
    CHECK(std::string(condition_id_name(ConditionId::Variant11)) == "VARIANT_11");
}

TEST_CASE("scan_points finds the single critical point of the signed half-square") {
    const auto model = fixture_model("ex3.5");
    const auto pts = scan_fixture(*model, 41);
    int criticals = 0;
    double where = 1e9;
    for (const auto& p : pts) {
        if (p.is_critical) {
            ++criticals;
            where = p.x[0];
        }
    }
    CHECK(criticals == 1);
    CHECK(std::fabs(where) <= 1e-9);
}

TEST_CASE("scan_points: critical point of the sign-split fixture sits at the origin") {
    const auto model = fixture_model("ex4.3a");
    const auto pts = scan_fixture(*model);
    int criticals = 0;
    for (const auto& p : pts) {
        if (p.is_critical) {
            ++criticals;
            CHECK(std::fabs(p.x[0]) <= 1e-9);
        }
    }
    CHECK(criticals == 1);
}

TEST_CASE("scan_points: strictly monotone functions have no critical points") {
    const FunctionModel f = monotone_cubic_plus();
    for (const auto& p : scan_points(f, {41, 82, 9, 1e-6}))
        CHECK_FALSE(p.is_critical);
}

TEST_CASE("scan_points skips points outside a partial domain") {
    // gradient sqrt(x+1.5) - 1 is undefined left of -1.5; the box reaches -2
    FunctionSpec s;
    s.name = "partial";
    s.dimension = 1;
    s.value = Expr::parse("(2/3)*sqrt(x1 + 1.5)^3 - x1");
    s.gradient = {Expr::parse("sqrt(x1 + 1.5) - 1")};
    const FunctionModel f(s);
    std::vector<ScanPoint> pts;
    CHECK_NOTHROW(pts = scan_points(f, {41, 82, 9, 1e-6}));
    CHECK_FALSE(pts.empty());
    int criticals = 0;
    double where = 1e9;
    for (const auto& p : pts) {
        CHECK(p.x[0] >= -1.5);
        if (p.is_critical) {
            ++criticals;
            where = p.x[0];
        }
    }
    // sqrt(x+1.5) = 1 exactly at x = -0.5
    CHECK(criticals == 1);
    CHECK(where == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("orth_directions") {
    SUBCASE("zero gradient in the plane samples the unit circle") {
        const auto dirs = orth_directions({0.0, 0.0}, 8, 3);
        CHECK(dirs.size() == 8);
        for (const auto& d : dirs) CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("nonzero gradient spans the orthogonal complement") {
        const auto dirs = orth_directions({1.0, 0.0}, 4, 3);
        REQUIRE(dirs.size() >= 2);
        for (const auto& d : dirs) {
            CHECK(std::fabs(d.u[0]) <= 1e-9);
            CHECK(std::fabs(std::fabs(d.u[1]) - 1.0) <= 1e-9);
        }
    }
    SUBCASE("one-dimensional noncritical point admits no direction") {
        CHECK(orth_directions({5.0}, 8, 3).empty());
    }
    SUBCASE("directions come in +- pairs") {
        const auto dirs = orth_directions({0.0, 0.0, 0.0}, 12, 3);
        REQUIRE(dirs.size() == 12);
        for (std::size_t i = 0; i + 1 < dirs.size(); i += 2)
            CHECK(dist2(dirs[i].u, scaled(-1.0, dirs[i + 1].u)) <= 1e-12);
    }
}

TEST_CASE("fixture verdicts match the expected pattern") {
    struct Expected {
        const char* name;
        CheckStatus nec_qc, nec_pc, suf_42, suf_44, suf_46, var_11;
    };
    const CheckStatus H = CheckStatus::HoldsSampled;
    const CheckStatus F = CheckStatus::Fails;
    const Expected table[] = {
        {"ex3.3", H, H, F, F, F, H},
        {"ex3.5", H, F, F, H, F, H},
        {"ex4.3a", H, H, F, F, F, H},
        {"ex4.3b", F, H, F, F, F, F},
        {"ex4.8", H, H, H, H, F, H},
        {"ex4.9", H, H, F, H, H, H},
    };
    for (const auto& row : table) {
        CAPTURE(row.name);
        const ConditionsResult r = run_fixture(row.name);
        CHECK(verdict(r, ConditionId::NecQc32).status == row.nec_qc);
        CHECK(verdict(r, ConditionId::NecPc34).status == row.nec_pc);
        CHECK(verdict(r, ConditionId::SufSpc42).status == row.suf_42);
        CHECK(verdict(r, ConditionId::SufSqc44).status == row.suf_44);
        CHECK(verdict(r, ConditionId::SufSpc46).status == row.suf_46);
        CHECK(verdict(r, ConditionId::Variant11).status == row.var_11);
    }
}

TEST_CASE("failing witnesses reproduce the known counterexamples") {
    SUBCASE("signed half-square: z = -1 against u = 1 with product -1") {
        const ConditionsResult r = run_fixture("ex3.5");
        const auto& v = verdict(r, ConditionId::NecPc34);
        REQUIRE(v.status == CheckStatus::Fails);
        REQUIRE(v.witness.has_value());
        const Witness& w = *v.witness;
        CHECK(std::fabs(w.x[0]) <= 1e-12);
        CHECK(w.u[0] == 1.0);
        REQUIRE(w.z.has_value());
        CHECK(std::fabs((*w.z)[0] + 1.0) <= 1e-9);
        CHECK(std::fabs(w.inner_product + 1.0) <= 1e-9);
        CHECK(w.kind == WitnessKind::NecViolation);
    }
    SUBCASE("clamped oscillatory fixture: limiting set reaches below zero") {
        const ConditionsResult r = run_fixture("ex4.9");
        const auto& v = verdict(r, ConditionId::SufSpc42);
        REQUIRE(v.status == CheckStatus::Fails);
        REQUIRE(v.witness.has_value());
        REQUIRE(v.witness->z.has_value());
        CHECK((*v.witness->z)[0] == doctest::Approx(-0.5).epsilon(0.02));
    }
    SUBCASE("piecewise quadratic: the sufficient failure is the empty certificate") {
        const ConditionsResult r = run_fixture("ex4.8");
        const auto& v = verdict(r, ConditionId::SufSpc46);
        REQUIRE(v.status == CheckStatus::Fails);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->u[0] < 0.0);
        CHECK(v.witness->context == "frechet estimate certified empty");
    }
}

TEST_CASE("negated square fails the necessary check with the analytic witness") {
    const FunctionModel f = negated_square();
    const auto pts = scan_fixture(f);
    const ConditionParams cp = default_params();
    const ConditionVerdict nec = check_necessary_quasiconvex(f, pts, cp);
    REQUIRE(nec.status == CheckStatus::Fails);
    REQUIRE(nec.witness.has_value());
    REQUIRE(nec.witness->z.has_value());
    // the estimate is the singleton {-2u}
    CHECK((*nec.witness->z)[0] == doctest::Approx(-2.0 * nec.witness->u[0]).epsilon(1e-4));
    CHECK(nec.witness->inner_product == doctest::Approx(-2.0).epsilon(1e-4));

    const ConditionVerdict var = check_variant_11(f, pts, cp);
    CHECK(var.status == CheckStatus::Fails);
}

TEST_CASE("convex 2-d quadratic holds everywhere") {
    const FunctionModel f = convex_quadratic_2d();
    ScanParams sp;
    sp.grid_density = 3;
    sp.random_count = 6;
    sp.seed = 5;
    const auto pts = scan_points(f, sp);
    ConditionParams cp = default_params();
    cp.samples_per_radius = 48;
    const ConditionsResult r = evaluate_conditions(f, pts, cp);
    CHECK(verdict(r, ConditionId::NecQc32).status == CheckStatus::HoldsSampled);
    CHECK(verdict(r, ConditionId::NecPc34).status == CheckStatus::HoldsSampled);
    CHECK(verdict(r, ConditionId::SufSpc42).status == CheckStatus::HoldsSampled);
    CHECK(verdict(r, ConditionId::Variant11).status == CheckStatus::HoldsSampled);
    CHECK(verdict(r, ConditionId::SufSpc42).implied_classification ==
          "strictly pseudoconvex (sampled evidence)");
}

TEST_CASE("strictly monotone 1-d function: all checks hold vacuously") {
    const FunctionModel f = monotone_cubic_plus();
    const auto pts = scan_fixture(f);
    const ConditionsResult r = evaluate_conditions(f, pts, default_params());
    for (const auto& v : r.verdicts) {
        CAPTURE(condition_id_name(v.condition_id));
        CHECK(v.status == CheckStatus::HoldsSampled);
    }
}

TEST_CASE("witness replay reproduces every recorded failure") {
    const ConditionParams cp = default_params();
    for (const char* name : {"ex3.3", "ex3.5", "ex4.3a", "ex4.3b", "ex4.8", "ex4.9"}) {
        CAPTURE(name);
        const auto model = fixture_model(name);
        const ConditionsResult r = evaluate_conditions(*model, scan_fixture(*model), cp);
        for (const auto& v : r.verdicts) {
            if (v.status != CheckStatus::Fails) continue;
            CAPTURE(condition_id_name(v.condition_id));
            REQUIRE(v.witness.has_value());
            CHECK(replay_witness(*model, v.condition_id, *v.witness, cp));
        }
    }
}

TEST_CASE("quantifier duality: the forall form implies the existence form") {
    for (const char* name : {"ex3.3", "ex3.5", "ex4.3a", "ex4.3b", "ex4.8", "ex4.9"}) {
        CAPTURE(name);
        const ConditionsResult r = run_fixture(name);
        if (verdict(r, ConditionId::SufSpc42).status == CheckStatus::HoldsSampled)
            CHECK(verdict(r, ConditionId::Variant11).status == CheckStatus::HoldsSampled);
    }
}

TEST_CASE("set estimate dumps are recorded at critical cells") {
    const ConditionsResult r = run_fixture("ex4.8");
    REQUIRE_FALSE(r.cells.empty());
    for (const auto& c : r.cells) {
        CHECK(c.at_critical_point);
        CHECK(std::fabs(c.x[0]) <= 1e-9);
    }
}
