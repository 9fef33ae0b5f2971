#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gencvx/conditions.hpp"
#include "gencvx/function.hpp"
#include "gencvx/sets.hpp"

namespace gencvx {

struct FixtureExpectations {
    bool quasiconvex = false;
    bool strictly_quasiconvex = false;
    bool pseudoconvex = false;
    bool strictly_pseudoconvex = false;
};

// Golden benchmark function: spec, closed-form second-order sets at the
// origin, expected classification flags, and known counterexample pairs.
struct Fixture {
    FunctionSpec spec;
    FixtureExpectations expected;
    std::vector<Witness> known_witnesses;

    // Closed-form sets at 0 as functions of the direction; absent when no
    // closed form is recorded for that operator.
    std::function<ExactSet1d(double)> frechet2_at0;
    std::function<ExactSet1d(double)> mordukhovich2_at0;

    std::optional<ExactSet1d> exact_frechet2(std::span<const double> x, double u) const;
    std::optional<ExactSet1d> exact_mordukhovich2(std::span<const double> x, double u) const;
};

// The six bundled fixtures, in registry order:
//   ex3.3  pseudoconvex oscillatory integral
//   ex3.5  signed half-square
//   ex4.3a sign-split oscillatory integral (not quasiconvex)
//   ex4.3b log-oscillation integral (not pseudoconvex)
//   ex4.8  piecewise quadratic
//   ex4.9  clamped oscillatory integral
const std::vector<Fixture>& load_fixtures();

const Fixture* find_fixture(const std::string& name);

// Models are expensive to prepare (quadrature tables); the registry shares
// one per fixture.
std::shared_ptr<const FunctionModel> fixture_model(const std::string& name);

} // namespace gencvx
