#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "l1regret/numerics.hpp"

namespace l1regret {

/// Weighted l1 penalty: gamma(theta) = sum_j weights[j] * |theta[j]|.
struct L1Penalty {
    std::vector<double> weights;

    explicit L1Penalty(std::vector<double> w) : weights(std::move(w)) {
        if (weights.empty()) throw std::invalid_argument("L1Penalty: needs at least one weight");
        for (double x : weights) {
            if (!(x > 0.0)) throw std::invalid_argument("L1Penalty: weights must be > 0");
        }
    }

    std::size_t dim() const { return weights.size(); }
};

inline double penalty_eval(const L1Penalty& p, const std::vector<double>& theta) {
    if (theta.size() != p.dim()) throw std::invalid_argument("penalty_eval: dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) s += p.weights[j] * std::abs(theta[j]);
    return s;
}

inline double soft_threshold(double u, double lam) {
    const double m = std::abs(u) - lam;
    return m > 0.0 ? std::copysign(m, u) : 0.0;
}

/// min over theta of (a/2)(theta - u)^2 + lam*|theta|.
/// Equals (a/2)u^2 when |u| <= lam/a, else lam|u| - lam^2/(2a). The quadratic
/// branch must match the atom evaluation in integrate_exp bit for bit, so both
/// are written as (a/2 first) * (u*u).
inline double penalized_quad_min(double a, double u, double lam) {
    if (!(a > 0.0)) throw std::invalid_argument("penalized_quad_min: a must be > 0");
    if (!(lam >= 0.0)) throw std::invalid_argument("penalized_quad_min: lam must be >= 0");
    if (std::abs(u) <= lam / a) return (0.5 * a) * (u * u);
    return lam * std::abs(u) - lam * lam / (2.0 * a);
}

/// Euclidean projection onto the l1 ball of radius B. The dual threshold is
/// found by bisection (cache-friendly for very large d; no sort needed).
inline std::vector<double> l1_ball_project(const std::vector<double>& x, double B) {
    if (!(B > 0.0)) throw std::invalid_argument("l1_ball_project: B must be > 0");
    double norm1 = 0.0, amax = 0.0;
    for (double v : x) {
        norm1 += std::abs(v);
        amax = std::max(amax, std::abs(v));
    }
    if (norm1 <= B) return x;

    auto excess = [&](double tau) {
        double s = 0.0;
        for (double v : x) {
            const double m = std::abs(v) - tau;
            if (m > 0.0) s += m;
        }
        return s - B;
    };
    const double tau = bisect_root(excess, 0.0, amax, amax * 1e-16);
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = soft_threshold(x[j], tau);
    return out;
}

}  // namespace l1regret
