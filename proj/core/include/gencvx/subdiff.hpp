#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gencvx/function.hpp"
#include "gencvx/numeric.hpp"
#include "gencvx/sets.hpp"

namespace gencvx {

struct Direction {
    Vec u;
    double norm() const { return norm2(u); }
    bool is_zero() const { return norm() == 0.0; }
};

// Scalar map y -> <u, grad phi(y)>. First-order subdifferentials of this map
// realize the second-order subdifferentials of phi at the chosen direction.
using ScalarFn = std::function<double(std::span<const double>)>;

ScalarFn scalarize(const FunctionModel& f, const Direction& u);

struct SubdiffParams {
    double initial_radius = 0.1;
    int radius_count = 17;          // r_k = initial_radius * 2^-k
    int samples_per_radius = 64;    // multiplied by the dimension at use sites
    std::uint64_t seed = 1;
    double scalar_lipschitz = 1.0;  // Lipschitz bound for the scalarized map
    double eps_memb_rel = 1e-6;     // membership slack: eps * (1 + |z|)
    double eps_empty_rel = 1e-3;    // 1-D emptiness gap slack
    int cloud_tail_annuli = 5;      // annuli whose gradient clusters form the cloud
    double fd_step_rel = 1e-3;      // derivative probe step relative to |y - x|
    int candidate_grid_size = 101;

    std::vector<double> schedule() const;
    double min_radius() const;
    double cluster_tol() const { return 10.0 * min_radius() * scalar_lipschitz; }

    // Populates the scalarized-Lipschitz field from a function and direction.
    static SubdiffParams for_direction(const FunctionModel& f, const Direction& u,
                                       std::uint64_t seed);
};

// One probe point y near x: direction, distance, the base difference
// quotient (g(y) - g(x)) / |y - x|, and a finite-difference gradient of g.
struct ProbeSample {
    Vec dir;
    double dist = 0.0;
    double qbase = 0.0;
    Vec grad;
    bool grad_ok = false;
};

struct ProbeSet {
    Vec x;
    double gx = 0.0;
    std::vector<double> radii;                       // descending
    std::vector<std::vector<ProbeSample>> annuli;    // one bucket per radius
    std::size_t attempts = 0;
    std::size_t failures = 0;

    int dimension() const { return static_cast<int>(x.size()); }
};

// Samples shrinking annuli around x. Throws DegenerateSampling when more
// than half of the evaluations fail.
ProbeSet build_probes(const ScalarFn& g, const Vec& x, const SubdiffParams& p);

// One-sided difference-quotient bounds at x for n = 1.
//   left_upper  ~ limsup of quotients from the left
//   right_lower ~ liminf of quotients from the right
// The Frechet subdifferential of g at x is [left_upper, right_lower] when
// that interval is nonempty, and empty otherwise. The *_cons fields carry
// drift-corrected bounds over the whole schedule (used for the emptiness
// gap); the *_rich fields carry tail-Richardson values (used as endpoint
// estimates when the tail has stabilized).
struct SlopeBounds1d {
    double left_upper_cons = 0.0, right_lower_cons = 0.0;
    double left_upper_rich = 0.0, right_lower_rich = 0.0;
    bool left_ok = false, right_ok = false;
    bool left_stable = false, right_stable = false;
};

SlopeBounds1d slope_bounds(const ProbeSet& probes, const SubdiffParams& p);

enum class Membership { Verified, Rejected, Inconclusive };

struct MembershipResult {
    Membership status = Membership::Inconclusive;
    double margin = 0.0;  // extrapolated liminf of the membership quotient
    Vec witness_dir;      // direction attaining the worst quotient
};

// Approximates liminf_{y->x} [g(y) - g(x) - <z, y-x>] / |y - x| from probe
// data: per-annulus minima, cumulative tail minima, Richardson extrapolation
// over the three smallest radii.
MembershipResult frechet_membership(const ProbeSet& probes, std::span<const double> z,
                                    const SubdiffParams& p);
MembershipResult frechet_membership(const ScalarFn& g, const Vec& x, std::span<const double> z,
                                    const SubdiffParams& p);

// Joint estimation of the limiting (Mordukhovich) and Frechet second-order
// sets from one probe table.
struct SubdiffAnalysis {
    SetEstimate mordukhovich;
    SetEstimate frechet;
    std::optional<SlopeBounds1d> slopes;  // n == 1 only
};

SubdiffAnalysis analyze_scalar_map(const ScalarFn& g, const Vec& x, const SubdiffParams& p,
                                   const std::vector<Vec>* candidate_grid = nullptr);

// Limiting first-order subdifferential estimate of a scalar map.
SetEstimate limiting_subdiff_estimate(const ScalarFn& g, const Vec& x, const SubdiffParams& p);

// Second-order operators via scalarization. The zero direction short-circuits
// to {0} for both.
SetEstimate second_order_mordukhovich(const FunctionModel& f, const Vec& x, const Direction& u,
                                      std::uint64_t seed = 1);
SetEstimate second_order_frechet(const FunctionModel& f, const Vec& x, const Direction& u,
                                 std::uint64_t seed = 1,
                                 const std::vector<Vec>* candidate_grid = nullptr);

// Default candidate grid: for n = 1, an even grid spanning the limiting hull
// padded by twice the cluster tolerance; for n > 1, the cloud points plus
// their pairwise midpoints.
std::vector<Vec> make_candidate_grid(const SetEstimate& limiting, const SubdiffParams& p);

} // namespace gencvx
