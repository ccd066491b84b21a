#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "l1regret/measures.hpp"

namespace l1regret {

/// Tail density level of the spike-and-tails pre-prior, exp(lam^2/2 - 1)/lam.
/// This is the smallest constant level on |x| >= lam that keeps the measure
/// inside the Bayesian envelope of the penalized unit-curvature quadratics
/// (the sufficient condition c*exp(lam*x) >= x*exp(lam^2/2) for x >= 0 holds
/// with equality in the limit). It also reproduces the partition value
/// ln(1 + 2 exp(-lam^2/2)/(lam^2 e)), which a level of exp(lam^2/2)/(lam^2 e)
/// would not; envelope_check validates the choice numerically.
/// Overflows for lam > ~37.6; callers at large penalties go through the
/// scale-corrected constructor, which keeps the argument moderate.
inline double st_tail_level(double lam) {
    if (!(lam > 0.0)) throw std::invalid_argument("st_tail_level: lam must be > 0");
    return std::exp(0.5 * lam * lam - 1.0) / lam;
}

/// Spike-and-tails pre-prior: a unit atom at the origin plus constant density
/// st_tail_level(lam) on |x| > lam (open endpoints; the difference is
/// Lebesgue-null and avoids double counting at the split).
inline MixtureMeasure1D st_preprior(double lam) {
    const double c = st_tail_level(lam);
    return MixtureMeasure1D({{0.0, 1.0}},
                            {{{-kInf, -lam}, c}, {{lam, kInf}, c}});
}

/// Scale-corrected spike-and-tails pre-prior for smoothness L: the pushforward
/// of st_preprior(lam/sqrt(L)) under theta -> theta/sqrt(L). Satisfies
/// log_partition(w, lam) = ln(1 + (2L/(e lam^2)) exp(-lam^2/(2L))).
inline MixtureMeasure1D st_preprior_scaled(double lam, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("st_preprior_scaled: L must be > 0");
    return scale_measure(st_preprior(lam / std::sqrt(L)), std::sqrt(L));
}

/// Lebesgue pre-prior (one full-line piece at level 1); the pre-prior of the
/// tilted Jeffreys prior for quadratic losses.
inline MixtureMeasure1D lebesgue_preprior() {
    return MixtureMeasure1D({}, {{{-kInf, kInf}, 1.0}});
}

namespace detail {
// Ln(x) = ln(max(e, x))
inline double ln_floored(double x) { return x > M_E ? std::log(x) : 1.0; }
}  // namespace detail

/// Per-dimension penalty weights for countably-infinite models:
/// lambda_j = sqrt(2 L Ln(j Ln j)), nondecreasing in j.
inline std::vector<double> infinite_dim_weights(double L, int J) {
    if (!(L > 0.0)) throw std::invalid_argument("infinite_dim_weights: L must be > 0");
    if (J < 1) throw std::invalid_argument("infinite_dim_weights: J must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(J));
    for (int j = 1; j <= J; ++j) {
        const double x = j * detail::ln_floored(static_cast<double>(j));
        out[static_cast<std::size_t>(j - 1)] = std::sqrt(2.0 * L * detail::ln_floored(x));
    }
    return out;
}

/// Running sums of the separable complexity bound, entry j-1 holding
/// sum_{i<=j} 1/(i Ln(i)^2). The sum converges as J grows, independently of L.
inline std::vector<double> infinite_dim_bound_partials(double L, int J) {
    if (!(L > 0.0)) throw std::invalid_argument("infinite_dim_bound_partials: L must be > 0");
    if (J < 1) throw std::invalid_argument("infinite_dim_bound_partials: J must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(J));
    double s = 0.0;
    for (int j = 1; j <= J; ++j) {
        const double lnj = detail::ln_floored(static_cast<double>(j));
        s += 1.0 / (j * lnj * lnj);
        out[static_cast<std::size_t>(j - 1)] = s;
    }
    return out;
}

/// Truncated separable complexity bound sum_{j<=J} 1/(j Ln(j)^2).
inline double infinite_dim_bound(double L, int J) {
    return infinite_dim_bound_partials(L, J).back();
}

}  // namespace l1regret
