#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gencvx/function.hpp"
#include "gencvx/subdiff.hpp"

namespace gencvx {

enum class ConditionId { NecQc32, NecPc34, SufSpc42, SufSqc44, SufSpc46, Variant11 };

// Wire names; these exact strings appear in serialized reports.
const char* condition_id_name(ConditionId id);

enum class CheckStatus { HoldsSampled, Fails, Inconclusive };
const char* check_status_name(CheckStatus s);

enum class WitnessKind { NecViolation, SufViolation, DefinitionViolation };
const char* witness_kind_name(WitnessKind k);

// Concrete counterexample attached to failing verdicts. For condition checks
// x is the scan point, u the direction, z the offending subgradient; for
// definition-level oracles u is the second point offset y - x and context
// carries the segment parameter when one is involved.
struct Witness {
    Vec x;
    Vec u;
    std::optional<Vec> z;
    double inner_product = 0.0;
    WitnessKind kind = WitnessKind::NecViolation;
    std::string context;
};

struct ConditionVerdict {
    ConditionId condition_id = ConditionId::NecQc32;
    CheckStatus status = CheckStatus::Inconclusive;
    std::optional<Witness> witness;
    long points_checked = 0;
    int directions_per_point = 0;
    std::string note;  // e.g. the non-sufficiency annotation on the variant check
    std::string implied_classification;  // set when a sufficient check holds
};

struct ScanPoint {
    Vec x;
    Vec gradient;
    bool is_critical = false;
};

struct ScanParams {
    int grid_density = 41;  // points per axis
    int random_count = 64;
    std::uint64_t seed = 1;
    double eps_crit = 1e-6;
};

// Deterministic lattice plus seeded random interior points; critical points
// are refined along lattice edges (sign flips and local minima of |grad|).
std::vector<ScanPoint> scan_points(const FunctionModel& f, const ScanParams& p);

// Unit directions orthogonal to the gradient. Near-critical gradients yield
// a sphere sample; in one dimension a nonzero gradient admits none.
std::vector<Direction> orth_directions(const Vec& gradient, int count, std::uint64_t seed,
                                       double eps_crit = 1e-6);

struct ConditionParams {
    int direction_count = 0;  // 0 = max(8, 4n)
    double eps_strict_rel = 1e-7;
    double eps_crit = 1e-6;
    std::uint64_t seed = 1;
    int samples_per_radius = 0;  // 0 = 64*n
};

// Estimates retained for the report at each evaluated (point, direction).
struct CellEstimates {
    Vec x;
    Vec u;
    bool at_critical_point = false;
    SetEstimate mordukhovich;
    SetEstimate frechet;
};

struct ConditionsResult {
    std::vector<ConditionVerdict> verdicts;  // all six, fixed order
    std::vector<CellEstimates> cells;
};

ConditionsResult evaluate_conditions(const FunctionModel& f, const std::vector<ScanPoint>& points,
                                     const ConditionParams& p);

// Per-theorem wrappers over evaluate_conditions.
ConditionVerdict check_necessary_quasiconvex(const FunctionModel& f,
                                             const std::vector<ScanPoint>& points,
                                             const ConditionParams& p);
ConditionVerdict check_necessary_pseudoconvex(const FunctionModel& f,
                                              const std::vector<ScanPoint>& points,
                                              const ConditionParams& p);
ConditionVerdict check_sufficient_mordukhovich(const FunctionModel& f,
                                               const std::vector<ScanPoint>& points,
                                               const ConditionParams& p);
ConditionVerdict check_sufficient_frechet_union(const FunctionModel& f,
                                                const std::vector<ScanPoint>& points,
                                                const ConditionParams& p);
ConditionVerdict check_sufficient_frechet_exists(const FunctionModel& f,
                                                 const std::vector<ScanPoint>& points,
                                                 const ConditionParams& p);
ConditionVerdict check_variant_11(const FunctionModel& f, const std::vector<ScanPoint>& points,
                                  const ConditionParams& p);

// Recomputes the estimate behind a failing witness and confirms the recorded
// violation reproduces.
bool replay_witness(const FunctionModel& f, ConditionId id, const Witness& w,
                    const ConditionParams& p);

} // namespace gencvx
