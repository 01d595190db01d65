// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "spherehit/error.hpp"
#include "spherehit/fpt/first_passage.hpp"
#include "spherehit/fpt/geometry.hpp"
#include "spherehit/specfun/polynomials.hpp"
#include "spherehit/specfun/series.hpp"
#include "spherehit/specfun/sphere.hpp"

namespace spherehit::jointdist {

using fpt::Geometry;
using fpt::InversionControl;
using specfun::Band;
using specfun::SeriesControl;
using specfun::SeriesResult;

/// Weight of the n-th zonal term: 1, 2, 2, ... for d = 2, (n + nu)/nu for d >= 3.
inline double series_weight(int d, int n) {
    if (d == 2) return n == 0 ? 1.0 : 2.0;
    const double nu = 0.5 * (d - 2);
    return (n + nu) / nu;
}

/// Bessel index of the n-th term.
inline double term_order(const Geometry& g, int n) { return g.nu() + n; }

/// Geometric rate of the envelope below: a/r inside, r/a outside.
inline double envelope_rate(const Geometry& g) { return g.a < g.r ? g.a / g.r : g.r / g.a; }

/// log of w_n P_n(1) (a/r)^n P(tau < infinity at index nu + n): the largest
/// possible size of the n-th term of any hitting-law series.
inline double log_envelope(const Geometry& g, int n) {
    const double nu = g.nu();
    double v = std::log(series_weight(g.d, n)) + std::log(specfun::zonal_at_one(g.d, n)) + n * std::log(g.a / g.r);
    if (g.a > g.r) v += 2.0 * (n + nu) * std::log(g.r / g.a);
    return v;
}

/// Bound on sum_{m > n} envelope_m e_m, given e_{n+1} <= extra_next and
/// e_{m+1}/e_m <= extra_ratio for m > n.
inline double envelope_tail(const Geometry& g, int n, double extra_next = 1.0, double extra_ratio = 1.0) {
    const int m = n + 1;
    return specfun::geometric_tail(std::exp(log_envelope(g, m)) * extra_next,
                                   specfun::zonal_weight_ratio(g.d, m) * envelope_rate(g) * extra_ratio);
}

/// Bound on sum_{m > n} w_m P_m(1) (a/r)^m r^{2mu}/(2^mu Gamma(mu+1) t^mu),
/// mu = nu + m: the tail-mass envelope at time t.
inline double tail_envelope(const Geometry& g, int n, double t) {
    const int m = n + 1;
    const double mu = term_order(g, m);
    const double log_b = std::log(series_weight(g.d, m)) + std::log(specfun::zonal_at_one(g.d, m)) +
                         m * std::log(g.a / g.r) + mu * std::log(g.r * g.r / (2.0 * t)) - std::lgamma(mu + 1.0);
    const double ratio = specfun::zonal_weight_ratio(g.d, m) * g.a * g.r / (2.0 * t * (mu + 1.0));
    return specfun::geometric_tail(std::exp(log_b), ratio);
}

/// Smallest term count whose remainder bound is below abs_tol; throws
/// TruncationError when n_max terms do not suffice.
template <class Bound>
int required_terms(Bound&& bound, const SeriesControl& ctrl, const char* what, double& residual) {
    for (int n = 0; n < ctrl.n_max; ++n) {
        residual = bound(n);
        if (residual < ctrl.abs_tol) return n + 1;
    }
    throw TruncationError(std::string(what) + ": remainder bound above tolerance at n_max", ctrl.n_max, residual);
}

/// Band integrals of the zonal polynomials for one (geometry, band) pair,
/// extended on demand and reused across time sweeps.
class BandCoefficients {
  public:
    BandCoefficients(int d, Band band) : d_(d), band_(band) { specfun::validate(band_); }

    const std::vector<double>& get(int count) {
        if (static_cast<int>(values_.size()) < count)
            values_ = specfun::poly_band_integrals(d_, std::max(count, 2 * static_cast<int>(values_.size())), band_);
        return values_;
    }
    const Band& band() const { return band_; }

  private:
    int d_;
    Band band_;
    std::vector<double> values_;
};

}  // namespace spherehit::jointdist
