#include "gencvx/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double try_eval(const ScalarFn& g, const Vec& y, bool* ok) {
    try {
        const double v = g(y);
        *ok = std::isfinite(v);
        return v;
    } catch (const std::exception&) {
        *ok = false;
        return 0.0;
    }
}

// Richardson extrapolation for sequences with O(r) error on a halving radius
// schedule: value(r) ~ L + c r  =>  2 v_k - v_{k-1} ~ L.
double richardson(double coarse, double fine) { return 2.0 * fine - coarse; }

struct Cluster {
    Vec sum;
    int count = 0;
    Vec rep() const { return scaled(1.0 / count, sum); }
};

void add_to_clusters(std::vector<Cluster>& clusters, const Vec& v, double tol) {
    for (auto& c : clusters) {
        if (dist2(c.rep(), v) <= tol) {
            for (std::size_t i = 0; i < v.size(); ++i) c.sum[i] += v[i];
            ++c.count;
            return;
        }
    }
    clusters.push_back({v, 1});
}

void sort_cloud(std::vector<Vec>& cloud) {
    std::sort(cloud.begin(), cloud.end(), [](const Vec& a, const Vec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
}

bool cloud_contains(const std::vector<Vec>& cloud, const Vec& v, double tol) {
    for (const auto& c : cloud)
        if (dist2(c, v) <= tol) return true;
    return false;
}

void set_hull(SetEstimate& est) {
    est.hull_1d.reset();
    if (est.cloud.empty() || est.cloud.front().size() != 1) return;
    double lo = kInf, hi = -kInf;
    for (const auto& p : est.cloud) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
    }
    est.hull_1d = {lo, hi};
}

} // namespace

std::vector<double> SubdiffParams::schedule() const {
    std::vector<double> r(radius_count);
    double v = initial_radius;
    for (int k = 0; k < radius_count; ++k, v *= 0.5) r[k] = v;
    return r;
}

double SubdiffParams::min_radius() const {
    return initial_radius * std::pow(0.5, radius_count - 1);
}

SubdiffParams SubdiffParams::for_direction(const FunctionModel& f, const Direction& u,
                                           std::uint64_t seed) {
    SubdiffParams p;
    p.seed = seed;
    p.samples_per_radius = 64 * f.dimension();
    p.scalar_lipschitz = std::max(1e-9, f.grad_lipschitz() * std::max(u.norm(), 1e-12));
    return p;
}

ScalarFn scalarize(const FunctionModel& f, const Direction& u) {
    const Vec dir = u.u;
    const FunctionModel* model = &f;
    return [model, dir](std::span<const double> y) {
        const Vec g = model->gradient_at(y);
        return dot(dir, g);
    };
}

ProbeSet build_probes(const ScalarFn& g, const Vec& x, const SubdiffParams& p) {
    ProbeSet ps;
    ps.x = x;
    ps.radii = p.schedule();
    const int n = static_cast<int>(x.size());

    bool ok = false;
    ps.gx = try_eval(g, x, &ok);
    if (!ok) throw DegenerateSampling("scalarized map undefined at the base point");

    const int per_annulus = std::max(4, p.samples_per_radius);
    ps.annuli.resize(ps.radii.size());
    Vec y(n), yp(n), ym(n);
    for (std::size_t k = 0; k < ps.radii.size(); ++k) {
        const double r = ps.radii[k];
        auto& bucket = ps.annuli[k];
        bucket.reserve(per_annulus);
        Rng rng(Rng::substream(p.seed, 0x5eed0000ULL + k));
        for (int i = 0; i < per_annulus; ++i) {
            ProbeSample s;
            // log-uniform magnitude tiles [r/2, r]; consecutive annuli cover
            // the full scale range without gaps
            s.dist = r * std::pow(0.5, rng.uniform());
            if (n == 1) {
                s.dir = {i % 2 == 0 ? 1.0 : -1.0};
            } else {
                s.dir = rng.unit_vector(n);
            }
            for (int d = 0; d < n; ++d) y[d] = x[d] + s.dist * s.dir[d];

            ++ps.attempts;
            bool ok_y = false;
            const double gy = try_eval(g, y, &ok_y);
            if (!ok_y) {
                ++ps.failures;
                continue;
            }
            s.qbase = (gy - ps.gx) / s.dist;

            // Central-difference gradient; steps never reach x. A coarse and
            // a refined step are compared first: agreement means the map is
            // smooth at this scale, disagreement signals oscillation finer
            // than the coarse step, in which case the probe drops to a step
            // proportional to dist^2 (the sin(1/y) wavelength scale).
            const double ha = p.fd_step_rel * s.dist;
            const double hb = 0.125 * ha;
            const double hc = std::max(1e-2 * s.dist * s.dist, 1e-13 * s.dist);
            s.grad.assign(n, 0.0);
            s.grad_ok = true;
            for (int d = 0; d < n && s.grad_ok; ++d) {
                auto central = [&](double h, bool* ok) {
                    yp = y;
                    ym = y;
                    yp[d] += h;
                    ym[d] -= h;
                    bool ok_p = false, ok_m = false;
                    const double gp = try_eval(g, yp, &ok_p);
                    const double gm = try_eval(g, ym, &ok_m);
                    *ok = ok_p && ok_m;
                    return *ok ? (gp - gm) / (2.0 * h) : 0.0;
                };
                bool ok_a = false, ok_b = false;
                const double qa = central(ha, &ok_a);
                const double qb = central(hb, &ok_b);
                if (!ok_a || !ok_b) {
                    s.grad_ok = false;
                    break;
                }
                if (std::fabs(qa - qb) <= 1e-3 * (1.0 + std::fabs(qa) + std::fabs(qb))) {
                    s.grad[d] = qb;
                } else {
                    bool ok_c = false;
                    const double qc = central(hc, &ok_c);
                    if (!ok_c) {
                        s.grad_ok = false;
                        break;
                    }
                    s.grad[d] = qc;
                }
            }
            bucket.push_back(std::move(s));
        }
    }
    if (ps.failures * 2 > ps.attempts)
        throw DegenerateSampling("more than half of the subdifferential probes failed");
    return ps;
}

SlopeBounds1d slope_bounds(const ProbeSet& probes, const SubdiffParams& p) {
    SlopeBounds1d sb;
    if (probes.dimension() != 1) return sb;
    const std::size_t K = probes.annuli.size();

    std::vector<double> left_max(K, -kInf), right_min(K, kInf);
    for (std::size_t k = 0; k < K; ++k) {
        for (const auto& s : probes.annuli[k]) {
            const double q_signed = s.qbase * s.dir[0];  // (g(y)-g(x))/(y-x)
            if (s.dir[0] < 0.0)
                left_max[k] = std::max(left_max[k], q_signed);
            else
                right_min[k] = std::min(right_min[k], q_signed);
        }
    }

    const double L = p.scalar_lipschitz;
    sb.left_upper_cons = -kInf;
    sb.right_lower_cons = kInf;
    std::vector<double> lm_valid, rm_valid;  // tail sequences for Richardson
    for (std::size_t k = 0; k < K; ++k) {
        if (left_max[k] > -kInf) {
            sb.left_upper_cons = std::max(sb.left_upper_cons, left_max[k] - L * probes.radii[k]);
            lm_valid.push_back(left_max[k]);
        }
        if (right_min[k] < kInf) {
            sb.right_lower_cons = std::min(sb.right_lower_cons, right_min[k] + L * probes.radii[k]);
            rm_valid.push_back(right_min[k]);
        }
    }
    sb.left_ok = !lm_valid.empty();
    sb.right_ok = !rm_valid.empty();

    auto tail_estimate = [](const std::vector<double>& seq, double* out, bool* stable) {
        const std::size_t m = seq.size();
        if (m == 0) return;
        if (m < 3) {
            *out = seq.back();
            *stable = false;
            return;
        }
        const double est = richardson(seq[m - 2], seq[m - 1]);
        const double prev = richardson(seq[m - 3], seq[m - 2]);
        *out = est;
        *stable = std::fabs(est - prev) <= 1e-4 * (1.0 + std::fabs(est));
        if (!*stable) *out = seq.back();
    };
    tail_estimate(lm_valid, &sb.left_upper_rich, &sb.left_stable);
    tail_estimate(rm_valid, &sb.right_lower_rich, &sb.right_stable);
    return sb;
}

MembershipResult frechet_membership(const ProbeSet& probes, std::span<const double> z,
                                    const SubdiffParams& p) {
    MembershipResult res;
    const std::size_t K = probes.annuli.size();
    const double eps = p.eps_memb_rel * (1.0 + norm2(z));
    const double L = p.scalar_lipschitz;

    std::vector<double> annulus_min(K, kInf);
    std::vector<const ProbeSample*> annulus_arg(K, nullptr);
    for (std::size_t k = 0; k < K; ++k) {
        for (const auto& s : probes.annuli[k]) {
            const double q = s.qbase - dot(z, s.dir);
            if (q < annulus_min[k]) {
                annulus_min[k] = q;
                annulus_arg[k] = &s;
            }
        }
    }

    // Drift-credited rejection: the quotient can sit below its limit by at
    // most L r inside radius r, so a dip that survives the credit proves a
    // genuinely negative liminf at any smaller scale.
    double rejected_margin = kInf;
    const ProbeSample* reject_arg = nullptr;
    for (std::size_t k = 0; k < K; ++k) {
        if (annulus_min[k] == kInf) continue;
        const double credited = annulus_min[k] + L * probes.radii[k];
        if (credited < rejected_margin) {
            rejected_margin = credited;
            reject_arg = annulus_arg[k];
        }
    }
    if (rejected_margin < -eps && reject_arg != nullptr) {
        res.status = Membership::Rejected;
        res.margin = rejected_margin;
        res.witness_dir = reject_arg->dir;
        return res;
    }

    // cumulative minima over the tail: M_k = min over radii <= r_k
    std::vector<double> cum(K, kInf);
    double running = kInf;
    const ProbeSample* worst = nullptr;
    for (std::size_t k = K; k-- > 0;) {
        if (annulus_min[k] < running) {
            running = annulus_min[k];
            worst = annulus_arg[k];
        }
        cum[k] = running;
    }
    std::vector<double> valid;
    for (std::size_t k = 0; k < K; ++k)
        if (cum[k] < kInf) valid.push_back(cum[k]);
    if (valid.size() < 3) {
        res.status = Membership::Inconclusive;
        return res;
    }

    const std::size_t m = valid.size();
    const double est = richardson(valid[m - 2], valid[m - 1]);
    const double prev = richardson(valid[m - 3], valid[m - 2]);
    const double wobble = std::fabs(est - prev);
    res.margin = est;
    if (worst != nullptr) res.witness_dir = worst->dir;

    const double stable_slack = std::max(8.0 * eps, 0.02 * (1.0 + std::fabs(est)));
    if (est >= -eps) {
        res.status = wobble <= stable_slack ? Membership::Verified : Membership::Inconclusive;
    } else if (est + wobble < -eps) {
        res.status = Membership::Rejected;
    } else {
        res.status = Membership::Inconclusive;
    }
    return res;
}

MembershipResult frechet_membership(const ScalarFn& g, const Vec& x, std::span<const double> z,
                                    const SubdiffParams& p) {
    return frechet_membership(build_probes(g, x, p), z, p);
}

std::vector<Vec> make_candidate_grid(const SetEstimate& limiting, const SubdiffParams& p) {
    std::vector<Vec> grid;
    if (limiting.cloud.empty()) return grid;
    const int n = static_cast<int>(limiting.cloud.front().size());
    if (n == 1) {
        double lo = limiting.hull_1d ? (*limiting.hull_1d)[0] : limiting.cloud.front()[0];
        double hi = limiting.hull_1d ? (*limiting.hull_1d)[1] : limiting.cloud.front()[0];
        const double pad = 2.0 * p.cluster_tol();
        lo -= pad;
        hi += pad;
        const int count = std::max(3, p.candidate_grid_size);
        grid.reserve(count);
        for (int i = 0; i < count; ++i)
            grid.push_back({lo + (hi - lo) * static_cast<double>(i) / (count - 1)});
    } else {
        grid = limiting.cloud;
        const std::size_t c = limiting.cloud.size();
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = i + 1; j < c; ++j) {
                Vec mid(n);
                for (int d = 0; d < n; ++d)
                    mid[d] = 0.5 * (limiting.cloud[i][d] + limiting.cloud[j][d]);
                grid.push_back(std::move(mid));
            }
    }
    return grid;
}

SubdiffAnalysis analyze_scalar_map(const ScalarFn& g, const Vec& x, const SubdiffParams& p,
                                   const std::vector<Vec>* candidate_grid) {
    SubdiffAnalysis out;
    const int n = static_cast<int>(x.size());
    const ProbeSet probes = build_probes(g, x, p);
    const double ctol = p.cluster_tol();

    // limiting cloud: gradient clusters from the tail annuli (outer-limit
    // realization: only values that persist at small radii survive)
    std::vector<Cluster> clusters;
    const std::size_t K = probes.annuli.size();
    const std::size_t first_tail = K > static_cast<std::size_t>(p.cloud_tail_annuli)
                                       ? K - static_cast<std::size_t>(p.cloud_tail_annuli)
                                       : 0;
    for (std::size_t k = first_tail; k < K; ++k)
        for (const auto& s : probes.annuli[k])
            if (s.grad_ok) add_to_clusters(clusters, s.grad, ctol);

    SetEstimate& mord = out.mordukhovich;
    mord.radius_schedule = probes.radii;
    for (const auto& c : clusters) mord.cloud.push_back(c.rep());

    SetEstimate& fre = out.frechet;
    fre.radius_schedule = probes.radii;

    std::optional<SlopeBounds1d> slopes;
    if (n == 1) {
        slopes = slope_bounds(probes, p);
        // one-sided quotient limits join the cloud when their tails converge
        if (slopes->left_ok && slopes->left_stable &&
            !cloud_contains(mord.cloud, {slopes->left_upper_rich}, ctol))
            mord.cloud.push_back({slopes->left_upper_rich});
        if (slopes->right_ok && slopes->right_stable &&
            !cloud_contains(mord.cloud, {slopes->right_lower_rich}, ctol))
            mord.cloud.push_back({slopes->right_lower_rich});
    }

    // candidate set for Frechet verification
    SetEstimate prelim = mord;
    set_hull(prelim);
    std::vector<Vec> grid;
    if (candidate_grid != nullptr) {
        grid = *candidate_grid;
    } else {
        grid = make_candidate_grid(prelim, p);
    }
    if (n == 1 && slopes) {
        if (slopes->left_ok && slopes->left_stable) grid.push_back({slopes->left_upper_rich});
        if (slopes->right_ok && slopes->right_stable) grid.push_back({slopes->right_lower_rich});
    }

    bool gap_empty = false;
    if (n == 1 && slopes && slopes->left_ok && slopes->right_ok) {
        const double gap_eps = p.eps_empty_rel *
            (1.0 + std::fabs(slopes->left_upper_cons) + std::fabs(slopes->right_lower_cons));
        gap_empty = slopes->left_upper_cons > slopes->right_lower_cons + gap_eps;
    }

    bool any_verified = false;
    bool any_inconclusive = false;
    for (const auto& z : grid) {
        const MembershipResult m = frechet_membership(probes, z, p);
        if (m.status == Membership::Verified) {
            any_verified = true;
            if (!cloud_contains(fre.frechet_part, z, 1e-15)) fre.frechet_part.push_back(z);
        } else if (m.status == Membership::Inconclusive) {
            any_inconclusive = true;
        }
    }
    fre.cloud = fre.frechet_part;
    fre.is_certified_empty = n == 1 && gap_empty && !any_verified && !any_inconclusive;

    // verified candidates belong to the limiting estimate as well
    for (const auto& z : fre.frechet_part) {
        if (!cloud_contains(mord.cloud, z, 1e-15)) mord.cloud.push_back(z);
        if (!cloud_contains(mord.frechet_part, z, 1e-15)) mord.frechet_part.push_back(z);
    }

    sort_cloud(mord.cloud);
    sort_cloud(mord.frechet_part);
    sort_cloud(fre.cloud);
    sort_cloud(fre.frechet_part);
    set_hull(mord);
    set_hull(fre);
    out.slopes = slopes;
    return out;
}

SetEstimate limiting_subdiff_estimate(const ScalarFn& g, const Vec& x, const SubdiffParams& p) {
    return analyze_scalar_map(g, x, p).mordukhovich;
}

namespace {

SetEstimate zero_direction_estimate(const FunctionModel& f, const SubdiffParams& p) {
    SetEstimate est;
    est.cloud.push_back(Vec(f.dimension(), 0.0));
    est.frechet_part = est.cloud;
    est.radius_schedule = p.schedule();
    if (f.dimension() == 1) est.hull_1d = {0.0, 0.0};
    return est;
}

} // namespace

SetEstimate second_order_mordukhovich(const FunctionModel& f, const Vec& x, const Direction& u,
                                      std::uint64_t seed) {
    SubdiffParams p = SubdiffParams::for_direction(f, u, seed);
    if (u.is_zero()) return zero_direction_estimate(f, p);
    return analyze_scalar_map(scalarize(f, u), x, p).mordukhovich;
}

SetEstimate second_order_frechet(const FunctionModel& f, const Vec& x, const Direction& u,
                                 std::uint64_t seed, const std::vector<Vec>* candidate_grid) {
    SubdiffParams p = SubdiffParams::for_direction(f, u, seed);
    if (u.is_zero()) return zero_direction_estimate(f, p);
    return analyze_scalar_map(scalarize(f, u), x, p, candidate_grid).frechet;
}

} // namespace gencvx
