#include "gencvx/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

struct SimpsonPanel {
    double a, b, fa, fm, fb, whole;
};

double simpson_rec(const Integrand& f, const SimpsonPanel& p, double tol, int depth,
                   int defer, double width_floor) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = p.b - p.a;
    const double left = (h / 12.0) * (p.fa + 4.0 * flm + p.fm);
    const double right = (h / 12.0) * (p.fm + 4.0 * frm + p.fb);
    const double err = (left + right - p.whole) / 15.0;
    if ((defer <= 0 && std::fabs(err) <= tol) || depth <= 0 || h <= width_floor)
        return left + right + err;
    return simpson_rec(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1, defer - 1,
                       width_floor) +
           simpson_rec(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1, defer - 1,
                       width_floor);
}

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.0, 0.207784955007898467601, 0.405845151377397166907, 0.586087235467691130295,
    0.741531185599394439864, 0.864864423359769072789, 0.949107912342758524526,
    0.991455371120812639207,
};
constexpr double kKronrodWeights[8] = {
    0.209482141084727828013, 0.204432940075298892414, 0.190350578064785409913,
    0.169004726639267902827, 0.140653259715525918745, 0.104790010322250183840,
    0.063092092629978553291, 0.022935322010529224964,
};
constexpr double kGaussWeights[4] = {
    0.417959183673469387755, 0.381830050505118944950,
    0.279705391489276667901, 0.129484966168869693271,
};

void gk15(const Integrand& f, double a, double b, double* kronrod, double* gauss) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double gk = kKronrodWeights[0] * f0;
    double gg = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kKronrodNodes[i];
        const double fs = f(c - dx) + f(c + dx);
        gk += kKronrodWeights[i] * fs;
        if (i % 2 == 0) gg += kGaussWeights[i / 2] * fs;
    }
    *kronrod = gk * h;
    *gauss = gg * h;
}

double gk_rec(const Integrand& f, double a, double b, double tol, int depth, int defer,
              double width_floor) {
    double k, g;
    gk15(f, a, b, &k, &g);
    const double d = std::fabs(k - g);
    const double err = std::min(d, std::pow(200.0 * d, 1.5));
    if ((defer <= 0 && err <= tol) || depth <= 0 || (b - a) <= width_floor) return k;
    const double m = 0.5 * (a + b);
    return gk_rec(f, a, m, 0.5 * tol, depth - 1, defer - 1, width_floor) +
           gk_rec(f, m, b, 0.5 * tol, depth - 1, defer - 1, width_floor);
}

} // namespace

double adaptive_simpson(const Integrand& f, double a, double b, const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, opt);
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    const double r = simpson_rec(f, {a, b, fa, fm, fb, whole}, opt.abs_tol, opt.max_depth,
                                 opt.min_depth, opt.width_floor_rel * (b - a));
    if (!std::isfinite(r)) throw QuadratureError("non-finite integral value");
    return r;
}

double adaptive_gauss_kronrod(const Integrand& f, double a, double b, const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_gauss_kronrod(f, b, a, opt);
    const double r = gk_rec(f, a, b, opt.abs_tol, opt.max_depth, opt.min_depth,
                            opt.width_floor_rel * (b - a));
    if (!std::isfinite(r)) throw QuadratureError("non-finite integral value");
    return r;
}

CumulativeTable::CumulativeTable(const Integrand& f, double lo, double hi, int panels,
                                 const QuadratureOptions& panel_opt) {
    if (!(lo < 0.0)) lo = std::min(lo, -1e-3);
    if (!(hi > 0.0)) hi = std::max(hi, 1e-3);
    // Snap the grid so 0 lands exactly on a node.
    const double span = hi - lo;
    step_ = span / panels;
    const long below = static_cast<long>(std::ceil(-lo / step_));
    lo_ = -static_cast<double>(below) * step_;
    const long above = static_cast<long>(std::ceil(hi / step_));
    hi_ = static_cast<double>(above) * step_;
    const long count = below + above + 1;

    grid_.resize(count);
    for (long i = 0; i < count; ++i) grid_[i] = (static_cast<double>(i - below)) * step_;
    grid_[below] = 0.0;

    cum_.assign(count, 0.0);
    for (long i = below + 1; i < count; ++i)
        cum_[i] = cum_[i - 1] + adaptive_simpson(f, grid_[i - 1], grid_[i], panel_opt);
    for (long i = below - 1; i >= 0; --i)
        cum_[i] = cum_[i + 1] - adaptive_simpson(f, grid_[i], grid_[i + 1], panel_opt);
}

double CumulativeTable::integral_from_zero(const Integrand& f, double s,
                                           const QuadratureOptions& tail_opt) const {
    if (!covers(s)) return adaptive_simpson(f, 0.0, s, tail_opt);
    const double pos = (s - grid_.front()) / step_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= grid_.size()) i = grid_.size() - 1;
    // Integrate the remainder from the nearest node at or below s.
    return cum_[i] + adaptive_simpson(f, grid_[i], s, tail_opt);
}

} // namespace gencvx
