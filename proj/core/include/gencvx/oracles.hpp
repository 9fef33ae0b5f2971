#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gencvx/conditions.hpp"
#include "gencvx/function.hpp"

namespace gencvx {

enum class OracleProperty { Quasiconvex, StrictQuasiconvex, Pseudoconvex, StrictPseudoconvex };
const char* oracle_property_name(OracleProperty p);

enum class OracleStatus { ConsistentSampled, Violated };
const char* oracle_status_name(OracleStatus s);

struct OracleVerdict {
    OracleProperty property = OracleProperty::Quasiconvex;
    OracleStatus status = OracleStatus::ConsistentSampled;
    std::optional<Witness> witness;
    long pairs_checked = 0;
    int lambda_grid = 0;
};

struct OracleParams {
    long pair_count = 2000;
    int lambda_grid = 64;
    std::uint64_t seed = 1;
    double eps_strict = 1e-7;
    double eps_sep = 1e-6;   // admissibility cutoff for x != y
    double eps_crit = 1e-6;  // gradients below this count as vanished
    std::vector<Vec> focus_points;               // stratified sampling targets
    std::vector<std::pair<Vec, Vec>> guided_pairs;  // probed before random pairs
};

// Definition-level sampled checks. Only VIOLATED is definitive; the
// consistent outcome means no counterexample was found at this budget.
OracleVerdict quasiconvex_oracle(const FunctionModel& f, const OracleParams& p);
OracleVerdict strict_quasiconvex_oracle(const FunctionModel& f, const OracleParams& p);
OracleVerdict pseudoconvex_oracle(const FunctionModel& f, const OracleParams& p);
OracleVerdict strict_pseudoconvex_oracle(const FunctionModel& f, const OracleParams& p);

// First-order quasiconvexity surrogate: flags pairs where both
// <grad(x), y-x> and <grad(y), x-y> are strictly positive.
OracleVerdict crouzeix_first_order_check(const FunctionModel& f, const OracleParams& p);

struct SegmentMax {
    double t0 = 0.0;
    double value = 0.0;
    double directional_derivative = 0.0;
};

// Maximizes t -> phi(x1 + t (x2-x1)) over [0,1]; returns the interior
// maximizer when it reaches the segment maximum and satisfies the Fermat
// bound |<grad, x2-x1>| <= eps_fermat.
std::optional<SegmentMax> segment_max_witness(const FunctionModel& f, const Vec& x1, const Vec& x2,
                                              int grid = 1024, double eps_fermat = 1e-5);

struct MeanValueResult {
    bool found = false;
    double c = 0.0;           // in [a, b)
    double subgradient = 0.0; // x* with x*(b-a) >= g(b) - g(a) - eps
};

// Mean value inequality check for a Lipschitz scalar function on [a, b].
MeanValueResult mean_value_check(const std::function<double(double)>& g, double a, double b,
                                 int scan_count = 128, double eps_strict = 1e-7);

enum class LocalMinStatus { StrictLocalMin, LocalMin, NotMin };
const char* local_min_status_name(LocalMinStatus s);

struct LocalMinResult {
    LocalMinStatus status = LocalMinStatus::LocalMin;
    std::optional<Vec> counterexample;  // point with a smaller value, when NotMin
};

LocalMinResult local_min_check(const FunctionModel& f, const Vec& x_critical,
                               std::span<const double> radii, std::uint64_t seed = 1,
                               double eps_strict = 1e-7);
LocalMinResult local_min_check(const FunctionModel& f, const Vec& x_critical,
                               std::uint64_t seed = 1, double eps_strict = 1e-7);

} // namespace gencvx
