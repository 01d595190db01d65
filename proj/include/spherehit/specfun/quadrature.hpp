// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace spherehit::specfun {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
  public:
    explicit GaussLegendre(int n) : nodes_(n), weights_(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[i] = -x;
            nodes_[n - 1 - i] = x;
            weights_[i] = weights_[n - 1 - i] = w;
        }
    }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

    /// f(x, out) adds nothing; it overwrites out with the integrand vector.
    template <class F>
    void integrate(F&& f, double a, double b, std::span<double> result, std::span<double> scratch) const {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        std::fill(result.begin(), result.end(), 0.0);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            f(mid + half * nodes_[i], scratch);
            for (std::size_t j = 0; j < result.size(); ++j) result[j] += weights_[i] * scratch[j];
        }
        for (double& v : result) v *= half;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

inline const GaussLegendre& gauss_legendre_20() {
    static const GaussLegendre rule(20);
    return rule;
}

/// Adaptive bisection on a 20-point Gauss-Legendre rule.  A panel is accepted
/// when it agrees with the sum over its halves to within its share of
/// max(abs_tol, rel_tol * |estimate|).
template <class F>
double adaptive_gauss_legendre(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                               int max_depth = 40) {
    const auto& gl = gauss_legendre_20();
    struct Panel {
        double a, b, whole;
        int depth;
    };
    const double coarse = gl.integrate(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    const double width = b - a;
    std::vector<Panel> stack{{a, b, coarse, 0}};
    double total = 0.0, compensation = 0.0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double left = gl.integrate(f, p.a, m);
        const double right = gl.integrate(f, m, p.b);
        const double refined = left + right;
        const double local_tol = tol * std::max((p.b - p.a) / width, 1e-6);
        if (std::abs(refined - p.whole) <= local_tol || p.depth >= max_depth) {
            // Neumaier summation of accepted panels
            const double t = total + refined;
            compensation += std::abs(total) >= std::abs(refined) ? (total - t) + refined : (refined - t) + total;
            total = t;
        } else {
            stack.push_back({m, p.b, right, p.depth + 1});
            stack.push_back({p.a, m, left, p.depth + 1});
        }
    }
    return total + compensation;
}

/// Vector-valued variant: f(x, out) writes the integrand components.  The
/// acceptance test uses the max-norm over components.
template <class F>
void adaptive_gauss_legendre(F&& f, double a, double b, std::span<double> result, double abs_tol,
                             double rel_tol = 0.0, int max_depth = 40) {
    const auto& gl = gauss_legendre_20();
    const std::size_t m = result.size();
    std::vector<double> scratch(m), whole(m), left(m), right(m);
    struct Panel {
        double a, b;
        std::vector<double> whole;
        int depth;
    };
    gl.integrate(f, a, b, whole, scratch);
    double scale = 0.0;
    for (double v : whole) scale = std::max(scale, std::abs(v));
    const double tol = std::max(abs_tol, rel_tol * scale);
    const double width = b - a;
    std::fill(result.begin(), result.end(), 0.0);
    std::vector<Panel> stack;
    stack.push_back({a, b, whole, 0});
    while (!stack.empty()) {
        Panel p = std::move(stack.back());
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        gl.integrate(f, p.a, mid, left, scratch);
        gl.integrate(f, mid, p.b, right, scratch);
        double err = 0.0;
        for (std::size_t j = 0; j < m; ++j) err = std::max(err, std::abs(left[j] + right[j] - p.whole[j]));
        const double local_tol = tol * std::max((p.b - p.a) / width, 1e-6);
        if (err <= local_tol || p.depth >= max_depth) {
            for (std::size_t j = 0; j < m; ++j) result[j] += left[j] + right[j];
        } else {
            stack.push_back({mid, p.b, right, p.depth + 1});
            stack.push_back({p.a, mid, left, p.depth + 1});
        }
    }
}

}  // namespace spherehit::specfun
