#pragma once

// Shared test-only helpers: independent oracles kept deliberately separate
// from the library's estimation paths.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gencvx/function.hpp"
#include "gencvx/numeric.hpp"
#include "gencvx/subdiff.hpp"

namespace testsupport {

using gencvx::FunctionModel;
using gencvx::FunctionSpec;
using gencvx::Vec;

// Hessian-vector product by central differences of the exact gradient.
inline Vec fd_hessian_vec(const FunctionModel& f, const Vec& x, const Vec& u, double h = 1e-5) {
    const Vec xp = gencvx::axpy(h, u, x);
    const Vec xm = gencvx::axpy(-h, u, x);
    const Vec gp = f.gradient_at(xp);
    const Vec gm = f.gradient_at(xm);
    Vec out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) out[d] = (gp[d] - gm[d]) / (2.0 * h);
    return out;
}

// Brute-force Frechet membership: a plain liminf scan over random points in
// shrinking balls, no Richardson machinery. Returns the smallest quotient
// seen at the finest scale band.
inline double brute_liminf_quotient(const std::function<double(std::span<const double>)>& g,
                                    const Vec& x, const Vec& z, int per_scale = 4000) {
    const double gx = g(x);
    double lim = std::numeric_limits<double>::infinity();
    gencvx::Rng rng(777);
    for (const double r : {1e-4, 1e-5, 1e-6}) {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < per_scale; ++i) {
            const double dist = r * (0.1 + 0.9 * rng.uniform());
            Vec dir;
            if (x.size() == 1) {
                dir = {i % 2 == 0 ? 1.0 : -1.0};
            } else {
                dir = rng.unit_vector(x.size());
            }
            const Vec y = gencvx::axpy(dist, dir, x);
            const double q = (g(y) - gx) / dist - gencvx::dot(z, dir);
            m = std::min(m, q);
        }
        lim = m;  // keep the finest scale's minimum
    }
    return lim;
}

// Dense-random quadratic in n dimensions: value x'Ax/2 + b'x with symmetric A.
struct Quadratic {
    std::vector<std::vector<double>> a;
    Vec b;
    int n = 1;

    static Quadratic random(int n, gencvx::Rng& rng, double spread = 2.0) {
        Quadratic q;
        q.n = n;
        q.a.assign(n, std::vector<double>(n, 0.0));
        q.b.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            q.b[i] = rng.uniform(-1.0, 1.0);
            for (int j = 0; j <= i; ++j) {
                const double v = rng.uniform(-spread, spread);
                q.a[i][j] = v;
                q.a[j][i] = v;
            }
        }
        return q;
    }

    Vec apply(const Vec& u) const {
        Vec out(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += a[i][j] * u[j];
        return out;
    }

    std::string value_source() const {
        std::string s;
        auto term = [&](double c, const std::string& body) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", c);
            if (!s.empty()) s += " + ";
            s += std::string(buf) + "*" + body;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double c = i == j ? 0.5 * a[i][i] : a[i][j];
                term(c, "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1));
            }
        for (int i = 0; i < n; ++i) term(b[i], "x" + std::to_string(i + 1));
        return s.empty() ? "0" : s;
    }

    std::vector<std::string> gradient_sources() const {
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) {
            std::string s;
            auto term = [&](double c, const std::string& body) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", c);
                if (!s.empty()) s += " + ";
                s += std::string(buf) + (body.empty() ? "" : "*" + body);
            };
            for (int j = 0; j < n; ++j) term(a[i][j], "x" + std::to_string(j + 1));
            term(b[i], "");
            out.push_back(s.empty() ? "0" : s);
        }
        return out;
    }

    FunctionSpec to_spec(const std::string& name) const {
        FunctionSpec spec;
        spec.name = name;
        spec.dimension = n;
        spec.value = gencvx::Expr::parse(value_source());
        for (const auto& g : gradient_sources()) spec.gradient.push_back(gencvx::Expr::parse(g));
        spec.domain_box.assign(n, {-2.0, 2.0});
        return spec;
    }
};

// Eigenvalues of the 2x2 symmetric matrix [[a,b],[b,c]].
inline std::pair<double, double> eig2(double a, double b, double c) {
    const double tr = a + c;
    const double det = a * c - b * b;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    return {0.5 * tr - disc, 0.5 * tr + disc};
}

// Jacobi sweep eigenvalues for small symmetric matrices.
inline std::vector<double> sym_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(m[p][q]) < 1e-18) continue;
                const double theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Minimum eigenvalue of A restricted to the orthogonal complement of g
// (whole space when g vanishes). Projects A onto an orthonormal basis of the
// complement and runs the small eigensolver.
inline double restricted_min_eig(const Quadratic& q, const Vec& g, double eps_crit = 1e-6) {
    const std::size_t n = q.a.size();
    std::vector<Vec> basis;
    if (gencvx::norm2(g) <= eps_crit) {
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, 0.0);
            e[i] = 1.0;
            basis.push_back(std::move(e));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            Vec v(n, 0.0);
            v[i] = 1.0;
            const double c = gencvx::dot(v, g) / gencvx::dot(g, g);
            for (std::size_t k = 0; k < n; ++k) v[k] -= c * g[k];
            for (const auto& b : basis) {
                const double d = gencvx::dot(v, b);
                for (std::size_t k = 0; k < n; ++k) v[k] -= d * b[k];
            }
            const double nv = gencvx::norm2(v);
            if (nv > 1e-9) {
                for (auto& c2 : v) c2 /= nv;
                basis.push_back(std::move(v));
            }
        }
    }
    if (basis.empty()) return 0.0;
    const std::size_t m = basis.size();
    std::vector<std::vector<double>> proj(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        const Vec abi = q.apply(basis[i]);
        for (std::size_t j = 0; j < m; ++j) proj[i][j] = gencvx::dot(abi, basis[j]);
    }
    return sym_eigenvalues(proj).front();
}

} // namespace testsupport
