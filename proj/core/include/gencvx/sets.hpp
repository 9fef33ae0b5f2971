#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gencvx/numeric.hpp"

namespace gencvx {

// Closed-form description of a one-dimensional subdifferential set.
struct ExactSet1d {
    enum class Kind { Empty, Singleton, Interval, FiniteSet };

    Kind kind = Kind::Empty;
    std::vector<double> points;  // singleton {v}; interval {lo, hi}; finite set sorted

    static ExactSet1d empty() { return {Kind::Empty, {}}; }
    static ExactSet1d singleton(double v) { return {Kind::Singleton, {v}}; }
    static ExactSet1d interval(double lo, double hi) { return {Kind::Interval, {lo, hi}}; }
    static ExactSet1d finite(std::vector<double> pts);

    bool is_empty() const { return kind == Kind::Empty; }
    double width() const;
};

// Finite approximation of a subdifferential set. `cloud` holds cluster
// representatives of limiting-subgradient candidates; `frechet_part` is the
// membership-verified subset.
struct SetEstimate {
    std::vector<Vec> cloud;
    std::optional<std::array<double, 2>> hull_1d;  // present iff n == 1 and cloud nonempty
    std::vector<Vec> frechet_part;
    std::vector<double> radius_schedule;
    bool is_certified_empty = false;

    bool empty() const { return cloud.empty(); }
};

double hausdorff_intervals(const std::array<double, 2>& a, const std::array<double, 2>& b);
double hausdorff_point_sets(const std::vector<double>& a, const std::vector<double>& b);

// Distance between an estimate and an exact description, per the fixture
// comparison rules: hull against intervals/singletons, cloud against finite
// sets. Returns infinity when one side is empty and the other is not.
double hausdorff_estimate_vs_exact(const SetEstimate& est, const ExactSet1d& exact);

} // namespace gencvx
