#include "gencvx/fixtures.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

constexpr double kPi = 3.141592653589793;

FunctionSpec make_spec(std::string name, const char* value, const char* gradient,
                       double lipschitz) {
    FunctionSpec s;
    s.name = std::move(name);
    s.dimension = 1;
    s.value = Expr::parse(value);
    s.gradient.push_back(Expr::parse(gradient));
    s.domain_box = {{-2.0, 2.0}};
    s.grad_lipschitz = lipschitz;
    return s;
}

Witness pair_witness(double x, double y, double inner, WitnessKind kind, std::string context) {
    Witness w;
    w.x = {x};
    w.u = {y - x};
    w.inner_product = inner;
    w.kind = kind;
    w.context = std::move(context);
    return w;
}

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> all;

    {
        // ex3.3: phi(x) = integral of 2t^2 + t^2 sin(1/t) over [0, |x|];
        // smooth strictly increasing profile in |x| with an oscillatory
        // second derivative at the origin
        Fixture f;
        f.spec = make_spec(
            "ex3.3",
            "integral0(piecewise(t = 0 -> 0, else -> 2*t^2 + t^2*sin(1/t)), abs(x1))",
            "piecewise(x1 = 0 -> 0, x1 > 0 -> 2*x1^2 + x1^2*sin(1/x1), else -> -2*x1^2 + x1^2*sin(1/x1))",
            14.0);
        f.expected = {true, true, true, true};
        f.mordukhovich2_at0 = [](double u) {
            return ExactSet1d::interval(-std::fabs(u), std::fabs(u));
        };
        all.push_back(std::move(f));
    }

    {
        // ex3.5: phi(x) = x^2 sign(x) / 2, gradient |x|; quasiconvex but not
        // pseudoconvex (the origin is critical yet not a minimizer)
        Fixture f;
        f.spec = make_spec("ex3.5", "0.5 * x1^2 * sign(x1)", "abs(x1)", 1.0);
        f.expected = {true, true, false, false};
        f.frechet2_at0 = [](double u) {
            if (u >= 0.0) return ExactSet1d::interval(-u, u);
            return ExactSet1d::empty();
        };
        Witness w;
        w.x = {0.0};
        w.u = {1.0};
        w.z = Vec{-1.0};
        w.inner_product = -1.0;
        w.kind = WitnessKind::NecViolation;
        w.context = "second-order necessary condition for pseudoconvexity fails";
        f.known_witnesses.push_back(std::move(w));
        all.push_back(std::move(f));
    }

    {
        // ex4.3a: odd oscillatory integrand; the origin is a local maximum,
        // so the function is not quasiconvex although the existence-form
        // positivity holds at the only critical point
        Fixture f;
        f.spec = make_spec(
            "ex4.3a",
            "integral0(piecewise(t = 0 -> 0, t > 0 -> -2*t^2 + t^2*sin(1/t), else -> 2*t^2 + t^2*sin(1/t)), x1)",
            "piecewise(x1 = 0 -> 0, x1 > 0 -> -2*x1^2 + x1^2*sin(1/x1), else -> 2*x1^2 + x1^2*sin(1/x1))",
            14.0);
        f.expected = {false, false, false, false};
        f.mordukhovich2_at0 = [](double u) {
            return ExactSet1d::interval(-std::fabs(u), std::fabs(u));
        };
        f.known_witnesses.push_back(pair_witness(
            1.0 / kPi, -1.0 / kPi, 4.0 / (kPi * kPi * kPi), WitnessKind::DefinitionViolation,
            "first-order quasiconvexity violation pair"));
        all.push_back(std::move(f));
    }

    {
        // ex4.3b: gradient -2x - x sin(log|x|); the Frechet second-order set
        // at 0 is empty for every nonzero direction, yet the function is not
        // pseudoconvex. No Lipschitz constant is recorded for this gradient;
        // the model falls back to its sampled estimate.
        Fixture f;
        f.spec = make_spec(
            "ex4.3b",
            "integral0(piecewise(t = 0 -> 0, else -> -2*t - t*sin(log(abs(t)))), x1)",
            "piecewise(x1 = 0 -> 0, else -> -2*x1 - x1*sin(log(abs(x1))))",
            0.0);
        f.spec.grad_lipschitz.reset();
        f.expected = {false, false, false, false};
        f.frechet2_at0 = [](double u) {
            if (u == 0.0) return ExactSet1d::singleton(0.0);
            return ExactSet1d::empty();
        };
        f.known_witnesses.push_back(pair_witness(
            0.0, 1.0, -2.0, WitnessKind::DefinitionViolation,
            "first-order pseudoconvexity violation pair; inner product taken at y"));
        all.push_back(std::move(f));
    }

    {
        // ex4.8: half-quadratics glued at 0; convex, strictly pseudoconvex
        Fixture f;
        f.spec = make_spec("ex4.8", "piecewise(x1 > 0 -> 3*x1^2, else -> 0.5*x1^2)",
                           "piecewise(x1 > 0 -> 6*x1, else -> x1)", 6.0);
        f.expected = {true, true, true, true};
        f.frechet2_at0 = [](double u) {
            if (u > 0.0) return ExactSet1d::interval(u, 6.0 * u);
            if (u == 0.0) return ExactSet1d::singleton(0.0);
            return ExactSet1d::empty();
        };
        f.mordukhovich2_at0 = [](double u) {
            if (u >= 0.0) return ExactSet1d::interval(u, 6.0 * u);
            return ExactSet1d::finite({u, 6.0 * u});
        };
        all.push_back(std::move(f));
    }

    {
        // ex4.9: gradient t/2 + t^2 sin(1/t) clamped to +-1/(2 pi) outside
        // [-1/pi, 1/pi]; strictly pseudoconvex, twice differentiable at 0
        // with an oscillating second difference
        Fixture f;
        f.spec = make_spec(
            "ex4.9",
            "integral0(piecewise(t >= 1/pi -> 1/(2*pi), t <= -1/pi -> -1/(2*pi), t = 0 -> 0, "
            "else -> t/2 + t^2*sin(1/t)), x1)",
            "piecewise(x1 >= 1/pi -> 1/(2*pi), x1 <= -1/pi -> -1/(2*pi), x1 = 0 -> 0, "
            "else -> x1/2 + x1^2*sin(1/x1))",
            2.5);
        f.expected = {true, true, true, true};
        f.frechet2_at0 = [](double u) { return ExactSet1d::singleton(0.5 * u); };
        f.mordukhovich2_at0 = [](double u) {
            if (u >= 0.0) return ExactSet1d::interval(-0.5 * u, 1.5 * u);
            return ExactSet1d::interval(1.5 * u, -0.5 * u);
        };
        all.push_back(std::move(f));
    }

    return all;
}

} // namespace

std::optional<ExactSet1d> Fixture::exact_frechet2(std::span<const double> x, double u) const {
    if (!frechet2_at0 || x.size() != 1 || std::fabs(x[0]) > 1e-12) return std::nullopt;
    return frechet2_at0(u);
}

std::optional<ExactSet1d> Fixture::exact_mordukhovich2(std::span<const double> x, double u) const {
    if (!mordukhovich2_at0 || x.size() != 1 || std::fabs(x[0]) > 1e-12) return std::nullopt;
    return mordukhovich2_at0(u);
}

const std::vector<Fixture>& load_fixtures() {
    static const std::vector<Fixture> fixtures = build_fixtures();
    return fixtures;
}

const Fixture* find_fixture(const std::string& name) {
    for (const auto& f : load_fixtures())
        if (f.spec.name == name) return &f;
    return nullptr;
}

std::shared_ptr<const FunctionModel> fixture_model(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const FunctionModel>> cache;
    const Fixture* f = find_fixture(name);
    if (f == nullptr) throw ConfigError("unknown fixture: " + name);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto model = std::make_shared<const FunctionModel>(f->spec);
    cache.emplace(name, model);
    return model;
}

} // namespace gencvx
