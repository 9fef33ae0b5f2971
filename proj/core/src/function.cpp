#include "gencvx/function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

void collect_integral_nodes(const Node* n, std::vector<const Node*>& out) {
    if (n == nullptr) return;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BinaryNode>) {
                collect_integral_nodes(node.lhs.get(), out);
                collect_integral_nodes(node.rhs.get(), out);
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                collect_integral_nodes(node.arg.get(), out);
            } else if constexpr (std::is_same_v<T, PowNode>) {
                collect_integral_nodes(node.base.get(), out);
            } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
                for (const auto& b : node.branches) {
                    collect_integral_nodes(b.lhs.get(), out);
                    collect_integral_nodes(b.rhs.get(), out);
                    collect_integral_nodes(b.value.get(), out);
                }
                collect_integral_nodes(node.otherwise.get(), out);
            } else if constexpr (std::is_same_v<T, Integral0Node>) {
                out.push_back(n);
                // integrands cannot nest further integrals; the upper limit
                // could not either (parser enforces both)
            }
        },
        n->v);
}

const Integral0Node& as_integral(const Node* n) { return std::get<Integral0Node>(n->v); }

} // namespace

// Per-node cumulative tables, built lazily on first use and immutable after.
class FunctionModel::TableResolver : public IntegralResolver {
public:
    struct Entry {
        double lo = -1.0, hi = 1.0;  // expected range of the upper limit
        std::once_flag built;
        std::optional<CumulativeTable> table;
    };

    explicit TableResolver(double tail_tol) { set_tolerance(tail_tol); }

    void set_tolerance(double tol) {
        tail_opt_.abs_tol = std::max(tol * 0.1, 1e-13);
        tail_opt_.min_depth = 2;  // remainder spans are at most one panel wide
        panel_opt_.abs_tol = 1e-14;
        panel_opt_.min_depth = 2;
        direct_opt_.abs_tol = std::max(tol, 1e-12);
    }

    void add_node(const Node* key, double lo, double hi) {
        auto& e = entries_[key];
        e.lo = lo;
        e.hi = hi;
    }

    double integrate(const void* node_key, const std::function<double(double)>& integrand,
                     double upper) const override {
        auto it = entries_.find(node_key);
        if (it == entries_.end()) return adaptive_simpson(integrand, 0.0, upper, direct_opt_);
        Entry& e = const_cast<Entry&>(it->second);
        std::call_once(e.built, [&] {
            e.table.emplace(integrand, e.lo, e.hi, 4096, panel_opt_);
        });
        return e.table->integral_from_zero(integrand, upper, tail_opt_);
    }

private:
    std::map<const void*, Entry> entries_;
    QuadratureOptions tail_opt_, panel_opt_, direct_opt_;
};

FunctionModel::FunctionModel(FunctionSpec spec) : spec_(std::move(spec)) {
    if (spec_.dimension < 1) throw ConfigError("dimension must be positive");
    if (static_cast<int>(spec_.gradient.size()) != spec_.dimension)
        throw ConfigError("gradient list length must equal the dimension");
    if (spec_.value.empty()) throw ConfigError("missing value expression");
    if (spec_.value.max_variable() >= spec_.dimension)
        throw ConfigError("value expression references a variable beyond the dimension");
    for (const auto& g : spec_.gradient) {
        if (g.empty()) throw ConfigError("missing gradient expression");
        if (g.max_variable() >= spec_.dimension)
            throw ConfigError("gradient expression references a variable beyond the dimension");
        if (g.uses_integral())
            throw ConfigError("gradient expressions may not contain integral0");
    }
    if (spec_.domain_box.empty())
        spec_.domain_box.assign(spec_.dimension, {-2.0, 2.0});
    if (static_cast<int>(spec_.domain_box.size()) != spec_.dimension)
        throw ConfigError("domain box must list one interval per coordinate");
    for (const auto& iv : spec_.domain_box)
        if (!(iv[0] < iv[1])) throw ConfigError("domain box intervals need lo < hi");

    resolver_ = std::make_shared<TableResolver>(quad_tol_);
    std::vector<const Node*> nodes;
    collect_integral_nodes(spec_.value.root(), nodes);
    for (const Node* n : nodes) {
        // Sample the upper-limit expression over the box to size the table.
        const auto& node = as_integral(n);
        double lo = 0.0, hi = 0.0;
        Rng rng(1234577);
        const int probes = std::min(2048, 64 * spec_.dimension * spec_.dimension + 256);
        Vec x(spec_.dimension);
        for (int s = 0; s < probes; ++s) {
            for (int d = 0; d < spec_.dimension; ++d) {
                const auto& iv = spec_.domain_box[d];
                // corners first, then uniform fill
                x[d] = (s < (1 << spec_.dimension)) ? ((s >> d) & 1 ? iv[1] : iv[0])
                                                    : rng.uniform(iv[0], iv[1]);
            }
            try {
                const double v = evaluate_node(*node.upper, x, nullptr);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            } catch (const DomainError&) {
            }
        }
        const double pad = 0.25 * (hi - lo) + 1e-3;
        resolver_->add_node(n, lo - pad, hi + pad);
    }

    if (spec_.grad_lipschitz && *spec_.grad_lipschitz > 0.0) {
        lipschitz_ = *spec_.grad_lipschitz;
    } else {
        lipschitz_ = estimate_lipschitz();
    }
}

// Defined out-of-line so the constructor stays readable.
double FunctionModel::box_diameter() const {
    double s = 0.0;
    for (const auto& iv : spec_.domain_box) {
        const double w = iv[1] - iv[0];
        s += w * w;
    }
    return std::sqrt(s);
}

double FunctionModel::value_at(std::span<const double> x) const {
    return spec_.value.evaluate(x, resolver_.get());
}

Vec FunctionModel::gradient_at(std::span<const double> x) const {
    Vec g(spec_.dimension);
    for (int d = 0; d < spec_.dimension; ++d) g[d] = spec_.gradient[d].evaluate(x, nullptr);
    return g;
}

void FunctionModel::set_quadrature_tolerance(double tol) {
    if (!(tol > 0.0)) throw ConfigError("quadrature tolerance must be positive");
    quad_tol_ = tol;
    resolver_->set_tolerance(tol);
}

GradientCheckResult FunctionModel::check_gradient_consistency(int points, std::uint64_t seed) const {
    GradientCheckResult res;
    Rng rng(seed);
    const int n = spec_.dimension;
    const double h = 1e-4 * std::max(1.0, 0.25 * box_diameter());
    for (int p = 0; p < points; ++p) {
        Vec x(n);
        for (int d = 0; d < n; ++d) {
            const auto& iv = spec_.domain_box[d];
            const double margin = 0.05 * (iv[1] - iv[0]);
            x[d] = rng.uniform(iv[0] + margin, iv[1] - margin);
        }
        const Vec dir = n == 1 ? Vec{1.0} : rng.unit_vector(n);
        try {
            const Vec grad = gradient_at(x);
            const double exact = dot(grad, dir);
            auto probe = [&](double step) {
                const Vec xp = axpy(step, dir, x);
                const Vec xm = axpy(-step, dir, x);
                return (value_at(xp) - value_at(xm)) / (2.0 * step);
            };
            const double q1 = probe(h);
            const double q2 = probe(0.5 * h);
            const double extrap = (4.0 * q2 - q1) / 3.0;
            const double err = std::fabs(extrap - exact);
            // tol(h): smooth part + quadrature noise amplification + observed
            // truncation residual
            const double tol = std::max(1e-6, 1e-4 * norm2(grad)) +
                               8.0 * quad_tol_ / h + 2.0 * std::fabs(q1 - q2);
            if (err > tol && err - tol > res.worst_error - res.worst_tolerance) {
                res.ok = false;
                res.worst_error = err;
                res.worst_tolerance = tol;
                res.worst_point = x;
            }
        } catch (const DomainError&) {
            // boundary-adjacent evaluation failure; skip the point
        }
    }
    return res;
}

double FunctionModel::estimate_lipschitz() const {
    // max over sampled pairs of |grad(x)-grad(y)| / |x-y|, probed at several
    // scales so kinks near the box center are not missed
    Rng rng(987654321);
    const int n = spec_.dimension;
    double best = 0.0;
    const double scales[] = {1.0, 0.1, 0.01, 1e-3, 1e-4, 1e-5};
    for (const double s : scales) {
        for (int i = 0; i < 48; ++i) {
            Vec x(n);
            for (int d = 0; d < n; ++d) {
                const auto& iv = spec_.domain_box[d];
                x[d] = rng.uniform(iv[0], iv[1]);
            }
            if (i % 2 == 0) {
                // half the probes concentrate near the box center
                for (int d = 0; d < n; ++d) {
                    const auto& iv = spec_.domain_box[d];
                    x[d] = 0.5 * (iv[0] + iv[1]) + (x[d] - 0.5 * (iv[0] + iv[1])) * 0.05;
                }
            }
            const Vec dir = n == 1 ? Vec{rng.uniform() < 0.5 ? -1.0 : 1.0} : rng.unit_vector(n);
            const double step = s * std::max(1e-9, 0.25 * box_diameter());
            try {
                const Vec g1 = gradient_at(x);
                const Vec g2 = gradient_at(axpy(step, dir, x));
                best = std::max(best, dist2(g1, g2) / step);
            } catch (const DomainError&) {
            }
        }
    }
    return std::max(best, 1e-6);
}

} // namespace gencvx
