#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gencvx/expr.hpp"
#include "gencvx/numeric.hpp"
#include "gencvx/quadrature.hpp"

namespace gencvx {

// A candidate function: value oracle plus user-supplied gradient oracle.
// The gradient is exact (expressions), never obtained by differencing.
struct FunctionSpec {
    std::string name;
    int dimension = 1;
    Expr value;
    std::vector<Expr> gradient;                       // one expression per coordinate
    std::vector<std::array<double, 2>> domain_box;    // defaults to [-2, 2]^n
    std::optional<double> grad_lipschitz;
};

struct GradientCheckResult {
    bool ok = true;
    Vec worst_point;
    double worst_error = 0.0;
    double worst_tolerance = 0.0;
};

// Immutable evaluation facade over a FunctionSpec. Construction validates the
// spec; integral0 quadrature tables are built once per node under call_once
// and are read-only afterwards, so concurrent evaluation needs no locking.
class FunctionModel {
public:
    explicit FunctionModel(FunctionSpec spec);

    const FunctionSpec& spec() const { return spec_; }
    int dimension() const { return spec_.dimension; }
    const std::vector<std::array<double, 2>>& box() const { return spec_.domain_box; }
    double box_diameter() const;

    double value_at(std::span<const double> x) const;
    Vec gradient_at(std::span<const double> x) const;

    // Provided constant when present, otherwise the sampled estimate.
    double grad_lipschitz() const { return lipschitz_; }

    // Central-difference validation of the gradient expressions against the
    // value expression on random interior points.
    GradientCheckResult check_gradient_consistency(int points, std::uint64_t seed) const;

    // Tolerance used when resolving integral0 nodes.
    double quadrature_tolerance() const { return quad_tol_; }
    void set_quadrature_tolerance(double tol);

private:
    class TableResolver;

    double estimate_lipschitz() const;

    FunctionSpec spec_;
    std::shared_ptr<TableResolver> resolver_;
    double lipschitz_ = 1.0;
    double quad_tol_ = 1e-10;
};

} // namespace gencvx
