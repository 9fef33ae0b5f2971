#include "gencvx/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gencvx/errors.hpp"
#include "gencvx/parallel.hpp"

namespace gencvx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr const char* kVariantNote =
    "diagnostic only: the existence form over the limiting estimate is not a "
    "sufficient condition for quasiconvexity";

Vec lattice_axis(double lo, double hi, int density) {
    Vec v(density);
    for (int i = 0; i < density; ++i) {
        // convex combination keeps symmetric lattices exact (0 lands on 0)
        v[i] = (lo * (density - 1 - i) + hi * i) / (density - 1);
    }
    return v;
}

double grad_norm_at(const FunctionModel& f, double x) {
    try {
        return std::fabs(f.gradient_at(std::vector<double>{x})[0]);
    } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// golden-section minimization of |grad| over [a, b]
double golden_min_grad(const FunctionModel& f, double a, double b) {
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = grad_norm_at(f, x1);
    double f2 = grad_norm_at(f, x2);
    for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = grad_norm_at(f, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = grad_norm_at(f, x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_grad_root(const FunctionModel& f, double a, double b) {
    double fa = f.gradient_at(std::vector<double>{a})[0];
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f.gradient_at(std::vector<double>{m})[0];
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

void push_scan_point(std::vector<ScanPoint>& out, const FunctionModel& f, Vec x, double eps_crit,
                     double dedup_tol) {
    Vec g;
    try {
        g = f.gradient_at(x);
    } catch (const DomainError&) {
        return;  // partial-domain candidate; drop the point
    }
    const bool crit = norm2(g) <= eps_crit;
    for (auto& existing : out) {
        if (dist2(existing.x, x) <= dedup_tol) {
            // keep the representative with the smaller gradient
            if (norm2(g) < norm2(existing.gradient)) {
                existing.x = std::move(x);
                existing.gradient = std::move(g);
                existing.is_critical = crit || existing.is_critical;
            }
            return;
        }
    }
    out.push_back({std::move(x), std::move(g), crit});
}

} // namespace

const char* condition_id_name(ConditionId id) {
    switch (id) {
    case ConditionId::NecQc32: return "NEC_QC_3.2";
    case ConditionId::NecPc34: return "NEC_PC_3.4";
    case ConditionId::SufSpc42: return "SUF_SPC_4.2";
    case ConditionId::SufSqc44: return "SUF_SQC_4.4";
    case ConditionId::SufSpc46: return "SUF_SPC_4.6";
    case ConditionId::Variant11: return "VARIANT_11";
    }
    return "?";
}

const char* check_status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::HoldsSampled: return "HOLDS_SAMPLED";
    case CheckStatus::Fails: return "FAILS";
    case CheckStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* witness_kind_name(WitnessKind k) {
    switch (k) {
    case WitnessKind::NecViolation: return "NEC_VIOLATION";
    case WitnessKind::SufViolation: return "SUF_VIOLATION";
    case WitnessKind::DefinitionViolation: return "DEFINITION_VIOLATION";
    }
    return "?";
}

std::vector<ScanPoint> scan_points(const FunctionModel& f, const ScanParams& p) {
    const int n = f.dimension();
    std::vector<ScanPoint> out;
    const double dedup_tol = 1e-7 * std::max(1.0, f.box_diameter());

    int density = std::max(2, p.grid_density);
    while (std::pow(static_cast<double>(density), n) > 4096.0 && density > 2) --density;

    std::vector<Vec> axes(n);
    for (int d = 0; d < n; ++d)
        axes[d] = lattice_axis(f.box()[d][0], f.box()[d][1], density);

    // full lattice
    std::vector<int> idx(n, 0);
    const long total = static_cast<long>(std::pow(static_cast<double>(density), n));
    for (long cell = 0; cell < total; ++cell) {
        Vec x(n);
        long rem = cell;
        for (int d = 0; d < n; ++d) {
            x[d] = axes[d][rem % density];
            rem /= density;
        }
        push_scan_point(out, f, std::move(x), p.eps_crit, dedup_tol);
    }

    Rng rng(p.seed);
    for (int i = 0; i < p.random_count; ++i) {
        Vec x(n);
        for (int d = 0; d < n; ++d) x[d] = rng.uniform(f.box()[d][0], f.box()[d][1]);
        push_scan_point(out, f, std::move(x), p.eps_crit, dedup_tol);
    }

    if (n == 1) {
        // refine along lattice edges: sign flips and interior minima of |grad|
        const Vec& ax = axes[0];
        std::vector<double> g(density, std::numeric_limits<double>::quiet_NaN());
        for (int i = 0; i < density; ++i) {
            try {
                g[i] = f.gradient_at(std::vector<double>{ax[i]})[0];
            } catch (const DomainError&) {
            }
        }
        for (int i = 0; i + 1 < density; ++i) {
            if (std::isnan(g[i]) || std::isnan(g[i + 1])) continue;
            if ((g[i] < 0.0) != (g[i + 1] < 0.0)) {
                try {
                    const double root = bisect_grad_root(f, ax[i], ax[i + 1]);
                    if (grad_norm_at(f, root) <= p.eps_crit)
                        push_scan_point(out, f, {root}, p.eps_crit, dedup_tol);
                } catch (const DomainError&) {
                }
            }
        }
        for (int i = 1; i + 1 < density; ++i) {
            if (std::isnan(g[i - 1]) || std::isnan(g[i]) || std::isnan(g[i + 1])) continue;
            if (std::fabs(g[i]) < std::fabs(g[i - 1]) && std::fabs(g[i]) <= std::fabs(g[i + 1])) {
                const double m = golden_min_grad(f, ax[i - 1], ax[i + 1]);
                if (grad_norm_at(f, m) <= p.eps_crit)
                    push_scan_point(out, f, {m}, p.eps_crit, dedup_tol);
            }
        }
    } else {
        // pattern-search refinement from the most promising starts
        std::vector<std::size_t> order(out.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return norm2(out[a].gradient) < norm2(out[b].gradient);
        });
        auto grad_norm_nd = [&](const Vec& y) {
            try {
                return norm2(f.gradient_at(y));
            } catch (const DomainError&) {
                return std::numeric_limits<double>::infinity();
            }
        };
        const int starts = std::min<std::size_t>(3, order.size());
        for (int s = 0; s < starts; ++s) {
            Vec x = out[order[s]].x;
            double best = grad_norm_nd(x);
            double step = 0.25 * f.box_diameter();
            while (step > 1e-10) {
                bool improved = false;
                for (int d = 0; d < n && !improved; ++d) {
                    for (const double sgn : {1.0, -1.0}) {
                        Vec y = x;
                        y[d] += sgn * step;
                        const double v = grad_norm_nd(y);
                        if (v < best) {
                            best = v;
                            x = std::move(y);
                            improved = true;
                            break;
                        }
                    }
                }
                if (!improved) step *= 0.5;
            }
            if (best <= p.eps_crit) push_scan_point(out, f, std::move(x), p.eps_crit, dedup_tol);
        }
    }
    return out;
}

std::vector<Direction> orth_directions(const Vec& gradient, int count, std::uint64_t seed,
                                       double eps_crit) {
    const int n = static_cast<int>(gradient.size());
    std::vector<Direction> dirs;
    const double gnorm = norm2(gradient);
    const bool critical = gnorm <= eps_crit;

    if (n == 1) {
        if (!critical) return dirs;  // no nonzero orthogonal direction exists
        dirs.push_back({{1.0}});
        if (count >= 2) dirs.push_back({{-1.0}});
        return dirs;
    }

    auto try_add = [&](Vec v) {
        if (!critical) {
            const double c = dot(v, gradient) / (gnorm * gnorm);
            for (int d = 0; d < n; ++d) v[d] -= c * gradient[d];
        }
        const double nv = norm2(v);
        if (nv < 1e-8) return;
        for (int d = 0; d < n; ++d) v[d] /= nv;
        for (const auto& existing : dirs)
            if (std::fabs(dot(existing.u, v)) > 1.0 - 1e-9) return;
        Vec neg = scaled(-1.0, v);
        dirs.push_back({std::move(v)});
        dirs.push_back({std::move(neg)});
    };

    for (int d = 0; d < n && static_cast<int>(dirs.size()) < count; ++d) {
        Vec e(n, 0.0);
        e[d] = 1.0;
        try_add(std::move(e));
    }
    Rng rng(seed);
    int guard = 0;
    while (static_cast<int>(dirs.size()) < count && guard++ < 64 * count)
        try_add(rng.unit_vector(n));
    if (static_cast<int>(dirs.size()) > count) dirs.resize(count);
    return dirs;
}

namespace {

struct CellOutcome {
    bool inconclusive = false;
    SetEstimate mord;
    SetEstimate fre;
    double eps_strict = 0.0;
    Vec x, u;
    bool at_critical = false;
};

struct Predicate {
    // ok per cell; when !ok a witness can be built from (z, product)
    bool ok = true;
    std::optional<Vec> z;
    double product = 0.0;
    std::string context;
};

double hull_scale(const SetEstimate& est) {
    double s = 0.0;
    for (const auto& p : est.cloud)
        for (const double c : p) s = std::max(s, std::fabs(c));
    return s;
}

Predicate exists_nonneg(const SetEstimate& est, const Vec& u, double eps) {
    Predicate pr;
    double best = -kInf;
    const Vec* arg = nullptr;
    for (const auto& z : est.cloud) {
        const double v = dot(z, u);
        if (v > best) {
            best = v;
            arg = &z;
        }
    }
    if (arg == nullptr || best < -eps) {
        pr.ok = false;
        if (arg != nullptr) {
            pr.z = *arg;
            pr.product = best;
        } else {
            pr.context = "empty estimate";
        }
    }
    return pr;
}

Predicate forall_nonneg(const std::vector<Vec>& zs, const Vec& u, double eps) {
    Predicate pr;
    double worst = kInf;
    const Vec* arg = nullptr;
    for (const auto& z : zs) {
        const double v = dot(z, u);
        if (v < worst) {
            worst = v;
            arg = &z;
        }
    }
    if (arg != nullptr && worst < -eps) {
        pr.ok = false;
        pr.z = *arg;
        pr.product = worst;
    }
    return pr;
}

Predicate forall_positive(const SetEstimate& est, const Vec& u, double eps) {
    Predicate pr;
    double worst = kInf;
    const Vec* arg = nullptr;
    for (const auto& z : est.cloud) {
        const double v = dot(z, u);
        if (v < worst) {
            worst = v;
            arg = &z;
        }
    }
    if (arg == nullptr) {
        pr.ok = false;
        pr.context = "empty estimate";
    } else if (worst <= eps) {
        pr.ok = false;
        pr.z = *arg;
        pr.product = worst;
    }
    return pr;
}

Predicate exists_positive(const std::vector<Vec>& zs, const Vec& u, double eps,
                          const char* empty_context) {
    Predicate pr;
    double best = -kInf;
    const Vec* arg = nullptr;
    for (const auto& z : zs) {
        const double v = dot(z, u);
        if (v > best) {
            best = v;
            arg = &z;
        }
    }
    if (arg == nullptr) {
        pr.ok = false;
        pr.context = empty_context;
    } else if (best <= eps) {
        pr.ok = false;
        pr.z = *arg;
        pr.product = best;
    }
    return pr;
}

const CellOutcome* find_negated(const std::vector<CellOutcome>& cells, std::size_t point_begin,
                                std::size_t point_end, const Vec& u) {
    for (std::size_t i = point_begin; i < point_end; ++i) {
        const auto& cu = cells[i].u;
        if (cu.size() != u.size()) continue;
        double err = 0.0;
        for (std::size_t d = 0; d < u.size(); ++d) err += std::fabs(cu[d] + u[d]);
        if (err <= 1e-12) return &cells[i];
    }
    return nullptr;
}

} // namespace

ConditionsResult evaluate_conditions(const FunctionModel& f, const std::vector<ScanPoint>& points,
                                     const ConditionParams& p) {
    const int n = f.dimension();
    const int dir_count = p.direction_count > 0 ? p.direction_count : std::max(8, 4 * n);

    // enumerate cells: (point, direction)
    struct CellRef {
        std::size_t point;
        Direction dir;
    };
    std::vector<CellRef> refs;
    std::vector<std::size_t> point_cell_begin(points.size() + 1, 0);
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        point_cell_begin[pi] = refs.size();
        auto dirs = orth_directions(points[pi].gradient, dir_count,
                                    Rng::substream(p.seed, 0xd17 + pi), p.eps_crit);
        for (auto& d : dirs) refs.push_back({pi, std::move(d)});
    }
    point_cell_begin[points.size()] = refs.size();

    std::vector<CellOutcome> cells(refs.size());
    parallel_for(refs.size(), [&](std::size_t ci) {
        const auto& ref = refs[ci];
        CellOutcome& cell = cells[ci];
        cell.x = points[ref.point].x;
        cell.u = ref.dir.u;
        cell.at_critical = points[ref.point].is_critical;
        SubdiffParams sp = SubdiffParams::for_direction(f, ref.dir, Rng::substream(p.seed, ci));
        if (p.samples_per_radius > 0) sp.samples_per_radius = p.samples_per_radius;
        try {
            SubdiffAnalysis an = analyze_scalar_map(scalarize(f, ref.dir), cell.x, sp);
            cell.mord = std::move(an.mordukhovich);
            cell.fre = std::move(an.frechet);
            // floor the strictness threshold at the sampling resolution, so
            // estimator noise near zero products cannot flip > against >=
            cell.eps_strict =
                std::max(p.eps_strict_rel * (1.0 + ref.dir.norm() * hull_scale(cell.mord)),
                         2.0 * sp.cluster_tol());
        } catch (const DegenerateSampling&) {
            cell.inconclusive = true;
        }
    });

    ConditionsResult result;
    const ConditionId ids[] = {ConditionId::NecQc32,  ConditionId::NecPc34,
                               ConditionId::SufSpc42, ConditionId::SufSqc44,
                               ConditionId::SufSpc46, ConditionId::Variant11};
    result.verdicts.resize(6);
    for (int i = 0; i < 6; ++i) {
        result.verdicts[i].condition_id = ids[i];
        result.verdicts[i].status = CheckStatus::HoldsSampled;
        result.verdicts[i].points_checked = static_cast<long>(points.size());
        result.verdicts[i].directions_per_point = dir_count;
    }
    result.verdicts[5].note = kVariantNote;

    auto record_fail = [&](int vi, const CellOutcome& cell, const Predicate& pr, WitnessKind kind) {
        auto& verdict = result.verdicts[vi];
        if (verdict.status == CheckStatus::Fails) return;  // first failure wins
        verdict.status = CheckStatus::Fails;
        Witness w;
        w.x = cell.x;
        w.u = cell.u;
        w.z = pr.z;
        w.inner_product = pr.product;
        w.kind = kind;
        w.context = pr.context;
        verdict.witness = std::move(w);
    };
    auto record_inconclusive = [&](int vi) {
        auto& verdict = result.verdicts[vi];
        if (verdict.status == CheckStatus::HoldsSampled) verdict.status = CheckStatus::Inconclusive;
    };

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        for (std::size_t ci = point_cell_begin[pi]; ci < point_cell_begin[pi + 1]; ++ci) {
            const CellOutcome& cell = cells[ci];
            if (cell.inconclusive) {
                for (int vi = 0; vi < 6; ++vi) record_inconclusive(vi);
                continue;
            }
            const double eps = cell.eps_strict;

            // necessary side
            {
                const Predicate pr = exists_nonneg(cell.mord, cell.u, eps);
                if (!pr.ok) record_fail(0, cell, pr, WitnessKind::NecViolation);
            }
            {
                const Predicate pr = forall_nonneg(cell.fre.frechet_part, cell.u, eps);
                if (!pr.ok) record_fail(1, cell, pr, WitnessKind::NecViolation);
            }

            // sufficient side
            {
                const Predicate pr = forall_positive(cell.mord, cell.u, eps);
                if (!pr.ok) record_fail(2, cell, pr, WitnessKind::SufViolation);
            }
            {
                std::vector<Vec> union_set = cell.fre.frechet_part;
                if (const CellOutcome* nc = find_negated(cells, point_cell_begin[pi],
                                                         point_cell_begin[pi + 1], cell.u)) {
                    if (nc->inconclusive) {
                        record_inconclusive(3);
                    } else {
                        for (const auto& z : nc->fre.frechet_part)
                            union_set.push_back(scaled(-1.0, z));
                    }
                }
                const Predicate pr =
                    exists_positive(union_set, cell.u, eps, "union of frechet estimates is empty");
                if (!pr.ok) record_fail(3, cell, pr, WitnessKind::SufViolation);
            }
            {
                Predicate pr;
                if (cell.fre.is_certified_empty) {
                    pr.ok = false;
                    pr.context = "frechet estimate certified empty";
                } else {
                    pr = exists_positive(cell.fre.frechet_part, cell.u, eps,
                                         "no verified frechet subgradients");
                }
                if (!pr.ok) record_fail(4, cell, pr, WitnessKind::SufViolation);
            }
            {
                const Predicate pr = exists_positive(cell.mord.cloud, cell.u, eps, "empty estimate");
                if (!pr.ok) record_fail(5, cell, pr, WitnessKind::SufViolation);
            }

            if (cell.at_critical) {
                result.cells.push_back({cell.x, cell.u, true, cell.mord, cell.fre});
            }
        }
    }

    if (result.verdicts[2].status == CheckStatus::HoldsSampled)
        result.verdicts[2].implied_classification = "strictly pseudoconvex (sampled evidence)";
    if (result.verdicts[3].status == CheckStatus::HoldsSampled)
        result.verdicts[3].implied_classification = "strictly quasiconvex (sampled evidence)";
    if (result.verdicts[4].status == CheckStatus::HoldsSampled)
        result.verdicts[4].implied_classification = "strictly pseudoconvex (sampled evidence)";
    return result;
}

namespace {

ConditionVerdict single_verdict(const FunctionModel& f, const std::vector<ScanPoint>& points,
                                const ConditionParams& p, ConditionId id) {
    ConditionsResult r = evaluate_conditions(f, points, p);
    for (auto& v : r.verdicts)
        if (v.condition_id == id) return v;
    return {};
}

} // namespace

ConditionVerdict check_necessary_quasiconvex(const FunctionModel& f,
                                             const std::vector<ScanPoint>& points,
                                             const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::NecQc32);
}
ConditionVerdict check_necessary_pseudoconvex(const FunctionModel& f,
                                              const std::vector<ScanPoint>& points,
                                              const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::NecPc34);
}
ConditionVerdict check_sufficient_mordukhovich(const FunctionModel& f,
                                               const std::vector<ScanPoint>& points,
                                               const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::SufSpc42);
}
ConditionVerdict check_sufficient_frechet_union(const FunctionModel& f,
                                                const std::vector<ScanPoint>& points,
                                                const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::SufSqc44);
}
ConditionVerdict check_sufficient_frechet_exists(const FunctionModel& f,
                                                 const std::vector<ScanPoint>& points,
                                                 const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::SufSpc46);
}
ConditionVerdict check_variant_11(const FunctionModel& f, const std::vector<ScanPoint>& points,
                                  const ConditionParams& p) {
    return single_verdict(f, points, p, ConditionId::Variant11);
}

bool replay_witness(const FunctionModel& f, ConditionId id, const Witness& w,
                    const ConditionParams& p) {
    Direction u{w.u};
    if (u.is_zero()) return false;
    SubdiffParams sp = SubdiffParams::for_direction(f, u, Rng::substream(p.seed, 0x9e91a7));
    if (p.samples_per_radius > 0) sp.samples_per_radius = p.samples_per_radius;
    try {
        const SubdiffAnalysis an = analyze_scalar_map(scalarize(f, u), w.x, sp);
        const double eps =
            std::max(p.eps_strict_rel * (1.0 + u.norm() * hull_scale(an.mordukhovich)),
                     2.0 * sp.cluster_tol());
        switch (id) {
        case ConditionId::NecQc32:
            return !exists_nonneg(an.mordukhovich, w.u, eps).ok;
        case ConditionId::NecPc34: {
            if (!w.z) return false;
            const Predicate pr = forall_nonneg(an.frechet.frechet_part, w.u, eps);
            return !pr.ok && std::fabs(dot(*w.z, w.u) - pr.product) <= 1e-6 * (1.0 + std::fabs(pr.product));
        }
        case ConditionId::SufSpc42:
            return !forall_positive(an.mordukhovich, w.u, eps).ok;
        case ConditionId::SufSqc44: {
            std::vector<Vec> union_set = an.frechet.frechet_part;
            SubdiffParams spn = sp;
            const Direction nu{scaled(-1.0, w.u)};
            const SubdiffAnalysis an2 = analyze_scalar_map(scalarize(f, nu), w.x, spn);
            for (const auto& z : an2.frechet.frechet_part) union_set.push_back(scaled(-1.0, z));
            return !exists_positive(union_set, w.u, eps, "").ok;
        }
        case ConditionId::SufSpc46:
            if (an.frechet.is_certified_empty) return true;
            return !exists_positive(an.frechet.frechet_part, w.u, eps, "").ok;
        case ConditionId::Variant11:
            return !exists_positive(an.mordukhovich.cloud, w.u, eps, "").ok;
        }
    } catch (const DegenerateSampling&) {
        return false;
    }
    return false;
}

} // namespace gencvx
