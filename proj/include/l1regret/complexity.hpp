#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "l1regret/measures.hpp"
#include "l1regret/numerics.hpp"
#include "l1regret/penalty.hpp"
#include "l1regret/priors.hpp"

namespace l1regret {

/// One row of the penalty-weight sweep.
struct RegretCurvePoint {
    double lam{};
    double shtarkov{};
    double regret_st{};
    double regret_jeffreys{};
    double st_upper{};  // closed-form ln w_ST[e^-gamma]
    double argmax_u_st{};
    double argmax_u_jeffreys{};
};

struct WorstCaseRegret {
    double regret{};
    double argmax_u{};
    bool diverged{};  // objective still increasing at u_max; regret set to +inf
};

/// Exact minimax regret of the d-dimensional standard normal location model
/// under the penalty lam*||theta||_1:
///   d * ln(2 Phi(lam) - 1 + sqrt(2/pi) exp(-lam^2/2)/lam).
/// Evaluated as d*log1p(tail - 2*Phi_bar(lam)) so the value survives at large
/// lam, where it decays like exp(-lam^2/2)/lam^3.
inline double shtarkov_exact(int d, double lam) {
    if (d < 1) throw std::invalid_argument("shtarkov_exact: d must be >= 1");
    if (!(lam > 0.0)) throw std::invalid_argument("shtarkov_exact: lam must be > 0");
    const double tail = std::sqrt(2.0 / M_PI) * std::exp(-0.5 * lam * lam) / lam;
    const double upper_mass = std::erfc(lam / std::sqrt(2.0));  // 2*(1 - Phi(lam))
    return d * std::log1p(tail - upper_mass);
}

/// Closed-form envelope-complexity upper bound for L-upper-smooth losses:
/// d * ln(1 + (2L/(e lam^2)) exp(-lam^2/(2L))).
inline double ec_upper_bound(int d, double lam, double L) {
    if (d < 1) throw std::invalid_argument("ec_upper_bound: d must be >= 1");
    if (!(lam > 0.0) || !(L > 0.0)) {
        throw std::invalid_argument("ec_upper_bound: lam and L must be > 0");
    }
    return d * std::log1p((2.0 * L / (M_E * lam * lam)) * std::exp(-lam * lam / (2.0 * L)));
}

/// Asymptotic lower reference d * ln(1 + exp(-lam^2/2)/(sqrt(2 pi) lam^3)),
/// meaningful for lam >= 1; compare against shtarkov_exact.
inline double shtarkov_asymptotic_lower(int d, double lam) {
    if (d < 1) throw std::invalid_argument("shtarkov_asymptotic_lower: d must be >= 1");
    if (!(lam > 0.0)) throw std::invalid_argument("shtarkov_asymptotic_lower: lam must be > 0");
    return d * std::log1p(std::exp(-0.5 * lam * lam) / (kSqrt2Pi * lam * lam * lam));
}

/// Minimum over a grid of u in [0, u_max] (the objective is symmetric in u) of
///   w[exp(-(theta-u)^2/2 - lam|theta|)] * exp(penalized_quad_min(1, u, lam)).
/// A result >= 1 - tol certifies approximate membership of w in the Bayesian
/// envelope of the penalized unit quadratics on the tested range.
inline double envelope_check(const MixtureMeasure1D& w, double lam, double u_max, int grid) {
    if (grid < 2) throw std::invalid_argument("envelope_check: grid must be >= 2");
    if (!(lam > 0.0)) throw std::invalid_argument("envelope_check: lam must be > 0");
    if (!(u_max > lam)) throw std::invalid_argument("envelope_check: u_max must exceed lam");
    double worst = kInf;
    for (int i = 0; i < grid; ++i) {
        const double u = u_max * i / (grid - 1);
        // the minimum enters as a negative offset so that the atom term of an
        // origin spike cancels it bit for bit inside the log-sum-exp
        const double m = penalized_quad_min(1.0, u, lam);
        const double v = std::exp(integrate_exp(w, ExpQuadIntegrand{1.0, u, lam, -m}));
        worst = std::min(worst, v);
    }
    return worst;
}

/// Worst-case regret of the Bayesian predictor with pre-prior w under the
/// penalty lam*|theta|, maximized over data centers u in [0, u_max]:
///   r(u) = ln w[e^-gamma] - ln w[e^-f_u-gamma] - min(f_u + gamma).
/// If r is still climbing at u_max the regret is unbounded on the tested
/// range and the divergence flag is set (regret = +inf).
inline WorstCaseRegret worst_case_regret(const MixtureMeasure1D& w, double lam, double u_max,
                                         int grid_points = 1024) {
    if (!(lam > 0.0)) throw std::invalid_argument("worst_case_regret: lam must be > 0");
    if (!(u_max > 0.0)) throw std::invalid_argument("worst_case_regret: u_max must be > 0");
    const double log_z = log_partition(w, lam);
    // folding the comparator minimum into the integrand offset keeps regrets
    // of order exp(-lam^2/2) exactly resolved (see envelope_check)
    auto r = [&](double u) {
        const double m = penalized_quad_min(1.0, u, lam);
        return log_z - integrate_exp(w, ExpQuadIntegrand{1.0, u, lam, -m});
    };
    const Max1dResult m = maximize_1d(r, 0.0, u_max, 1e-10, grid_points);
    if (m.at_upper_boundary) {
        const double h = u_max / (std::max(grid_points, 257) - 1);
        if (r(u_max) >= r(u_max - h)) {
            return {kInf, u_max, true};
        }
    }
    return {m.max, m.argmax, false};
}

namespace detail {

inline unsigned sweep_thread_count() {
    if (const char* env = std::getenv("L1REGRET_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, n); output order is the caller's to manage, so the
// result is deterministic regardless of thread count. The lowest-index
// exception wins.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned nthreads = std::min<std::size_t>(sweep_thread_count(), n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : workers) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

/// Sweep the penalty weight: per lambda, the exact minimax regret, the
/// worst-case regrets of the spike-and-tails and Lebesgue (tilted Jeffreys)
/// pre-priors, and the closed-form upper bound. Rows come back sorted by
/// lambda. u_max <= 0 selects the default 10 + 5*lambda per row. Rows are
/// computed in parallel (L1REGRET_THREADS overrides the thread count) and
/// merged in index order.
inline std::vector<RegretCurvePoint> sweep_lambda(std::vector<double> lams, double u_max = 0.0,
                                                  int grid_points = 1024) {
    if (lams.empty()) throw std::invalid_argument("sweep_lambda: lambda list must be nonempty");
    for (double l : lams) {
        if (!(l > 0.0)) throw std::invalid_argument("sweep_lambda: lambdas must be > 0");
    }
    std::sort(lams.begin(), lams.end());

    std::vector<RegretCurvePoint> rows(lams.size());
    detail::parallel_for(lams.size(), [&](std::size_t i) {
        const double lam = lams[i];
        const double span = u_max > 0.0 ? u_max : 10.0 + 5.0 * lam;
        const MixtureMeasure1D st = st_preprior(lam);
        const WorstCaseRegret r_st = worst_case_regret(st, lam, span, grid_points);
        const WorstCaseRegret r_jeff =
            worst_case_regret(lebesgue_preprior(), lam, span, grid_points);
        if (r_st.diverged || r_jeff.diverged) {
            throw divergence_error("sweep_lambda: regret unbounded at lambda=" +
                                   std::to_string(lam));
        }
        rows[i] = {lam,
                   shtarkov_exact(1, lam),
                   r_st.regret,
                   r_jeff.regret,
                   log_partition(st, lam),
                   r_st.argmax_u,
                   r_jeff.argmax_u};
    });
    return rows;
}

}  // namespace l1regret
