#pragma once

#include <functional>
#include <vector>

namespace gencvx {

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-11;
    int max_depth = 34;
    // Oscillatory integrands can alias the coarse stencil, so acceptance is
    // deferred until at least this many bisections happened.
    int min_depth = 8;
    // Subintervals narrower than this fraction of the original span are
    // accepted as-is; protects against non-terminating refinement at
    // oscillatory endpoints.
    double width_floor_rel = 1e-13;
};

// Adaptive Simpson with Richardson acceptance test.
double adaptive_simpson(const Integrand& f, double a, double b, const QuadratureOptions& opt = {});

// Adaptive Gauss-Kronrod (G7, K15); independent route used as an oracle
// against the Simpson path.
double adaptive_gauss_kronrod(const Integrand& f, double a, double b, const QuadratureOptions& opt = {});

// Cumulative antiderivative table for 0-anchored integrals: caches
// F(s) = \int_0^s f(t) dt on a uniform grid over [lo, hi] (0 always a node),
// so repeated evaluations only integrate the short remainder.
// Immutable after construction; safe for concurrent reads.
class CumulativeTable {
public:
    CumulativeTable(const Integrand& f, double lo, double hi, int panels, const QuadratureOptions& panel_opt);

    bool covers(double s) const { return s >= lo_ && s <= hi_; }

    // \int_0^s f; `f` must be the same integrand the table was built from.
    double integral_from_zero(const Integrand& f, double s, const QuadratureOptions& tail_opt) const;

private:
    double lo_, hi_, step_;
    std::vector<double> grid_;        // grid_[i] = lo_ + i*step_ (0 is one of them)
    std::vector<double> cum_;         // cum_[i] = \int_0^{grid_[i]} f
};

} // namespace gencvx
