#include "gencvx/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kLambdaPrefix = "lambda=";

std::string lambda_context(double lambda) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%.17g", kLambdaPrefix, lambda);
    return buf;
}

// Near-vanishing gradients are snapped to zero so the definitional predicates
// behave as they do at the exact critical point the sample represents.
Vec snapped_gradient(const FunctionModel& f, const Vec& x, double eps_crit) {
    Vec g = f.gradient_at(x);
    if (norm2(g) <= eps_crit) return Vec(x.size(), 0.0);
    return g;
}

struct PairSampler {
    const FunctionModel& f;
    const OracleParams& p;
    Rng rng;
    double min_sep;

    PairSampler(const FunctionModel& f, const OracleParams& p)
        : f(f), p(p), rng(p.seed), min_sep(std::max(p.eps_sep, 1e-3 * f.box_diameter())) {}

    Vec random_point() {
        Vec x(f.dimension());
        for (int d = 0; d < f.dimension(); ++d)
            x[d] = rng.uniform(f.box()[d][0], f.box()[d][1]);
        return x;
    }

    Vec near_focus_point() {
        if (p.focus_points.empty()) return random_point();
        const Vec& c = p.focus_points[rng.below(p.focus_points.size())];
        Vec x(f.dimension());
        const double spread = 0.15 * f.box_diameter();
        for (int d = 0; d < f.dimension(); ++d) {
            const auto& iv = f.box()[d];
            x[d] = std::clamp(c[d] + spread * (rng.uniform() * 2.0 - 1.0) *
                                         std::pow(10.0, -3.0 * rng.uniform()),
                              iv[0], iv[1]);
        }
        return x;
    }

    // guided pairs first, then halves stratified uniform / near-critical;
    // every fourth stratified pair anchors exactly at a critical point, where
    // the definitional violations of non-pseudoconvex functions live
    std::pair<Vec, Vec> pair(long index) {
        if (index < static_cast<long>(p.guided_pairs.size())) return p.guided_pairs[index];
        for (int attempt = 0; attempt < 64; ++attempt) {
            const bool focus = (index % 2 == 1) && !p.focus_points.empty();
            Vec a;
            if (focus && index % 4 == 1) {
                a = p.focus_points[static_cast<std::size_t>(index / 4) % p.focus_points.size()];
            } else if (focus) {
                a = near_focus_point();
            } else {
                a = random_point();
            }
            Vec b = focus ? (rng.uniform() < 0.5 ? near_focus_point() : random_point())
                          : random_point();
            if (dist2(a, b) >= min_sep) return {std::move(a), std::move(b)};
        }
        // box degenerate enough that separation failed; fall back to corners
        Vec a(f.dimension()), b(f.dimension());
        for (int d = 0; d < f.dimension(); ++d) {
            a[d] = f.box()[d][0];
            b[d] = f.box()[d][1];
        }
        return {std::move(a), std::move(b)};
    }
};

// Weak-inequality slack: float-equality noise plus quadrature error when the
// value oracle integrates.
double value_eq_slack(const FunctionModel& f, double a, double b) {
    double s = 64.0 * std::numeric_limits<double>::epsilon() *
               (1.0 + std::max(std::fabs(a), std::fabs(b)));
    if (f.spec().value.uses_integral()) s += 4.0 * f.quadrature_tolerance();
    return s;
}

} // namespace

const char* oracle_property_name(OracleProperty p) {
    switch (p) {
    case OracleProperty::Quasiconvex: return "QUASICONVEX";
    case OracleProperty::StrictQuasiconvex: return "STRICT_QUASICONVEX";
    case OracleProperty::Pseudoconvex: return "PSEUDOCONVEX";
    case OracleProperty::StrictPseudoconvex: return "STRICT_PSEUDOCONVEX";
    }
    return "?";
}

const char* oracle_status_name(OracleStatus s) {
    return s == OracleStatus::ConsistentSampled ? "CONSISTENT_SAMPLED" : "VIOLATED";
}

const char* local_min_status_name(LocalMinStatus s) {
    switch (s) {
    case LocalMinStatus::StrictLocalMin: return "STRICT_LOCAL_MIN";
    case LocalMinStatus::LocalMin: return "LOCAL_MIN";
    case LocalMinStatus::NotMin: return "NOT_MIN";
    }
    return "?";
}

OracleVerdict quasiconvex_oracle(const FunctionModel& f, const OracleParams& p) {
    OracleVerdict out;
    out.property = OracleProperty::Quasiconvex;
    out.lambda_grid = p.lambda_grid;
    PairSampler sampler(f, p);
    const long total = p.pair_count + static_cast<long>(p.guided_pairs.size());
    for (long i = 0; i < total; ++i) {
        auto [x, y] = sampler.pair(i);
        try {
            const double fx = f.value_at(x);
            const double fy = f.value_at(y);
            const double vmax = std::max(fx, fy);
            const double eps = p.eps_strict * (1.0 + std::fabs(vmax));
            for (int j = 0; j <= p.lambda_grid; ++j) {
                const double lambda = static_cast<double>(j) / p.lambda_grid;
                Vec z(x.size());
                for (std::size_t d = 0; d < x.size(); ++d)
                    z[d] = (1.0 - lambda) * x[d] + lambda * y[d];
                const double fz = f.value_at(z);
                if (fz > vmax + eps) {
                    out.status = OracleStatus::Violated;
                    Witness w;
                    w.x = x;
                    w.u = axpy(-1.0, x, y);  // y - x
                    w.inner_product = fz - vmax;
                    w.kind = WitnessKind::DefinitionViolation;
                    w.context = lambda_context(lambda);
                    out.witness = std::move(w);
                    out.pairs_checked = i + 1;
                    return out;
                }
            }
        } catch (const DomainError&) {
        }
        ++out.pairs_checked;
    }
    return out;
}

OracleVerdict strict_quasiconvex_oracle(const FunctionModel& f, const OracleParams& p) {
    OracleVerdict out;
    out.property = OracleProperty::StrictQuasiconvex;
    out.lambda_grid = p.lambda_grid;
    PairSampler sampler(f, p);
    const long total = p.pair_count + static_cast<long>(p.guided_pairs.size());
    for (long i = 0; i < total; ++i) {
        auto [x, y] = sampler.pair(i);
        if (dist2(x, y) <= p.eps_sep) continue;
        try {
            const double fx = f.value_at(x);
            const double fy = f.value_at(y);
            const double vmax = std::max(fx, fy);
            for (int j = 1; j < p.lambda_grid; ++j) {
                const double lambda = static_cast<double>(j) / p.lambda_grid;
                Vec z(x.size());
                for (std::size_t d = 0; d < x.size(); ++d)
                    z[d] = (1.0 - lambda) * x[d] + lambda * y[d];
                const double fz = f.value_at(z);
                if (fz >= vmax - value_eq_slack(f, fz, vmax)) {
                    out.status = OracleStatus::Violated;
                    Witness w;
                    w.x = x;
                    w.u = axpy(-1.0, x, y);
                    w.inner_product = fz - vmax;
                    w.kind = WitnessKind::DefinitionViolation;
                    w.context = lambda_context(lambda);
                    out.witness = std::move(w);
                    out.pairs_checked = i + 1;
                    return out;
                }
            }
        } catch (const DomainError&) {
        }
        ++out.pairs_checked;
    }
    return out;
}

namespace {

// Shared scan for the two pseudoconvexity oracles. `strict` switches the
// value premise from phi(x) > phi(y) to phi(x) >= phi(y) with x != y.
OracleVerdict pseudo_scan(const FunctionModel& f, const OracleParams& p, bool strict) {
    OracleVerdict out;
    out.property = strict ? OracleProperty::StrictPseudoconvex : OracleProperty::Pseudoconvex;
    out.lambda_grid = 0;
    PairSampler sampler(f, p);
    const long total = p.pair_count + static_cast<long>(p.guided_pairs.size());
    for (long i = 0; i < total; ++i) {
        auto [x, y] = sampler.pair(i);
        try {
            for (int swap = 0; swap < 2; ++swap) {
                const Vec& a = swap ? y : x;
                const Vec& b = swap ? x : y;
                const double fa = f.value_at(a);
                const double fb = f.value_at(b);
                bool premise;
                if (strict) {
                    premise = dist2(a, b) > p.eps_sep && fa >= fb - value_eq_slack(f, fa, fb);
                } else {
                    premise = fa > fb + p.eps_strict * (1.0 + std::max(std::fabs(fa), std::fabs(fb)));
                }
                if (!premise) continue;
                const Vec grad = snapped_gradient(f, a, p.eps_crit);
                const Vec dir = axpy(-1.0, a, b);  // b - a
                const double product = dot(grad, dir);
                const double threshold = p.eps_strict * norm2(grad) * norm2(dir);
                if (product >= -threshold) {
                    out.status = OracleStatus::Violated;
                    Witness w;
                    w.x = a;
                    w.u = dir;
                    w.z = grad;
                    w.inner_product = product;
                    w.kind = WitnessKind::DefinitionViolation;
                    out.witness = std::move(w);
                    out.pairs_checked = i + 1;
                    return out;
                }
            }
        } catch (const DomainError&) {
        }
        ++out.pairs_checked;
    }
    return out;
}

} // namespace

OracleVerdict pseudoconvex_oracle(const FunctionModel& f, const OracleParams& p) {
    return pseudo_scan(f, p, false);
}

OracleVerdict strict_pseudoconvex_oracle(const FunctionModel& f, const OracleParams& p) {
    return pseudo_scan(f, p, true);
}

OracleVerdict crouzeix_first_order_check(const FunctionModel& f, const OracleParams& p) {
    OracleVerdict out;
    out.property = OracleProperty::Quasiconvex;
    out.lambda_grid = 0;
    PairSampler sampler(f, p);
    const long total = p.pair_count + static_cast<long>(p.guided_pairs.size());
    for (long i = 0; i < total; ++i) {
        auto [x, y] = sampler.pair(i);
        try {
            const Vec gx = snapped_gradient(f, x, p.eps_crit);
            const Vec gy = snapped_gradient(f, y, p.eps_crit);
            const Vec dxy = axpy(-1.0, x, y);  // y - x
            const double fwd = dot(gx, dxy);
            const double bwd = -dot(gy, dxy);  // <grad(y), x - y>
            const double sep = norm2(dxy);
            const double tx = p.eps_strict * std::max(norm2(gx) * sep, 1e-300);
            const double ty = p.eps_strict * std::max(norm2(gy) * sep, 1e-300);
            if (fwd > tx && bwd > ty) {
                out.status = OracleStatus::Violated;
                Witness w;
                w.x = x;
                w.u = dxy;
                w.z = gx;
                w.inner_product = fwd;
                w.kind = WitnessKind::DefinitionViolation;
                char buf[64];
                std::snprintf(buf, sizeof buf, "reverse_product=%.17g", bwd);
                w.context = buf;
                out.witness = std::move(w);
                out.pairs_checked = i + 1;
                return out;
            }
        } catch (const DomainError&) {
        }
        ++out.pairs_checked;
    }
    return out;
}

std::optional<SegmentMax> segment_max_witness(const FunctionModel& f, const Vec& x1, const Vec& x2,
                                              int grid, double eps_fermat) {
    const Vec dx = axpy(-1.0, x1, x2);  // x2 - x1
    auto at = [&](double t) { return axpy(t, dx, x1); };
    auto h = [&](double t) { return f.value_at(at(t)); };

    const double h0 = h(0.0);
    const double h1 = h(1.0);
    const double hend = std::max(h0, h1);

    int best = -1;
    double best_val = -kInf;
    for (int i = 1; i < grid; ++i) {
        const double v = h(static_cast<double>(i) / grid);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best < 0) return std::nullopt;
    const double tie = 1e-9 * (1.0 + std::fabs(hend));
    if (best_val < hend - tie) return std::nullopt;  // maximum sits at an endpoint

    // golden-section refinement inside the bracketing cells
    const double phi = 0.6180339887498949;
    double a = static_cast<double>(best - 1) / grid;
    double b = static_cast<double>(best + 1) / grid;
    double t1 = b - phi * (b - a);
    double t2 = a + phi * (b - a);
    double f1 = h(t1);
    double f2 = h(t2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (f1 >= f2) {
            b = t2;
            t2 = t1;
            f2 = f1;
            t1 = b - phi * (b - a);
            f1 = h(t1);
        } else {
            a = t1;
            t1 = t2;
            f1 = f2;
            t2 = a + phi * (b - a);
            f2 = h(t2);
        }
    }
    SegmentMax sm;
    sm.t0 = 0.5 * (a + b);
    sm.value = h(sm.t0);
    if (sm.value < hend - tie) return std::nullopt;
    sm.directional_derivative = dot(f.gradient_at(at(sm.t0)), dx);
    if (std::fabs(sm.directional_derivative) > eps_fermat) return std::nullopt;
    if (!(sm.t0 > 0.0 && sm.t0 < 1.0)) return std::nullopt;
    return sm;
}

MeanValueResult mean_value_check(const std::function<double(double)>& g, double a, double b,
                                 int scan_count, double eps_strict) {
    MeanValueResult res;
    if (a == b) return res;
    const double ga = g(a);
    const double gb = g(b);
    const double target = gb - ga;

    // the max cell quotient dominates the mean slope by telescoping, so a
    // witness always exists on the grid
    const int cells = std::max(2, scan_count);
    const double step = (b - a) / cells;
    double best_q = -kInf;
    double best_c = a;
    double prev = ga;
    for (int i = 1; i <= cells; ++i) {
        const double t = a + step * i;
        const double v = g(t);
        const double q = (v - prev) / step;
        if (q > best_q) {
            best_q = q;
            best_c = a + step * (i - 1);
        }
        prev = v;
    }
    // refine within the best cell
    const int sub = 16;
    double c = best_c;
    double q = best_q;
    double left = best_c;
    double fine = step / sub;
    double pv = g(left);
    for (int i = 1; i <= sub; ++i) {
        const double t = left + fine * i;
        const double v = g(t);
        const double qq = (v - pv) / fine;
        if (qq > q) {
            q = qq;
            c = left + fine * (i - 1);
        }
        pv = v;
    }
    const double eps = eps_strict * (1.0 + std::fabs(target));
    if (q * (b - a) >= target - eps) {
        res.found = true;
        res.c = c;
        res.subgradient = q;
    }
    return res;
}

LocalMinResult local_min_check(const FunctionModel& f, const Vec& x_critical,
                               std::span<const double> radii, std::uint64_t seed,
                               double eps_strict) {
    LocalMinResult res;
    const int n = f.dimension();
    const double f0 = f.value_at(x_critical);
    const double drop_eps = eps_strict * (1.0 + std::fabs(f0));

    double smallest = kInf;
    bool strict_at_smallest = true;
    Rng rng(seed);
    for (const double r : radii) {
        smallest = std::min(smallest, r);
        const int count = n == 1 ? 2 : 16 * n;
        bool all_above = true;
        for (int i = 0; i < count; ++i) {
            Vec dir;
            if (n == 1) {
                dir = {i == 0 ? 1.0 : -1.0};
            } else {
                dir = rng.unit_vector(n);
            }
            const Vec y = axpy(r, dir, x_critical);
            try {
                const double fy = f.value_at(y);
                if (fy < f0 - drop_eps) {
                    res.status = LocalMinStatus::NotMin;
                    res.counterexample = y;
                    return res;
                }
                if (fy <= f0 + eps_strict * r * r) all_above = false;
            } catch (const DomainError&) {
                all_above = false;
            }
        }
        if (r == smallest) strict_at_smallest = all_above;
    }
    res.status = strict_at_smallest ? LocalMinStatus::StrictLocalMin : LocalMinStatus::LocalMin;
    return res;
}

LocalMinResult local_min_check(const FunctionModel& f, const Vec& x_critical, std::uint64_t seed,
                               double eps_strict) {
    std::vector<double> radii;
    double r = 0.1;
    for (int k = 0; k <= 10; ++k, r *= 0.5) radii.push_back(r);
    return local_min_check(f, x_critical, radii, seed, eps_strict);
}

} // namespace gencvx
