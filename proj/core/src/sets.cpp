#include "gencvx/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gencvx {

ExactSet1d ExactSet1d::finite(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    return {Kind::FiniteSet, std::move(pts)};
}

double ExactSet1d::width() const {
    if (points.empty()) return 0.0;
    return points.back() - points.front();
}

double hausdorff_intervals(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::max(std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1]));
}

double hausdorff_point_sets(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
        double h = 0.0;
        for (const double p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const double q : to) best = std::min(best, std::fabs(p - q));
            h = std::max(h, best);
        }
        return h;
    };
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_estimate_vs_exact(const SetEstimate& est, const ExactSet1d& exact) {
    const double inf = std::numeric_limits<double>::infinity();
    if (exact.is_empty()) return est.is_certified_empty && est.cloud.empty() ? 0.0 : inf;
    if (est.cloud.empty()) return inf;

    std::vector<double> cloud1d;
    cloud1d.reserve(est.cloud.size());
    for (const auto& p : est.cloud)
        if (p.size() == 1) cloud1d.push_back(p[0]);
    if (cloud1d.empty()) return inf;

    switch (exact.kind) {
    case ExactSet1d::Kind::Singleton:
    case ExactSet1d::Kind::Interval: {
        const double lo = exact.points.front();
        const double hi = exact.points.back();
        const auto hull = est.hull_1d.value_or(std::array<double, 2>{
            *std::min_element(cloud1d.begin(), cloud1d.end()),
            *std::max_element(cloud1d.begin(), cloud1d.end())});
        return hausdorff_intervals(hull, {lo, hi});
    }
    case ExactSet1d::Kind::FiniteSet:
        return hausdorff_point_sets(cloud1d, exact.points);
    case ExactSet1d::Kind::Empty:
        return inf;  // unreachable
    }
    return inf;
}

} // namespace gencvx
