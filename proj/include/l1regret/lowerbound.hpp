#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "l1regret/numerics.hpp"

namespace l1regret {

/// Three-point prior: masses (1-eps, eps/2, eps/2) at {0, -mu, +mu}.
struct ThreePointPrior {
    double eps{};
    double mu{};
};

/// The near-least-favorable spacing mu = sqrt(2 ln(1/eps) / L).
inline ThreePointPrior three_point(double eps, double L) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("three_point: eps must be in (0,1)");
    if (!(L > 0.0)) throw std::invalid_argument("three_point: L must be > 0");
    return {eps, std::sqrt(2.0 * std::log(1.0 / eps) / L)};
}

/// Entropy of the three-point prior, (1-eps) ln(1/(1-eps)) + eps ln(2/eps).
inline double prior_entropy(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("prior_entropy: eps must be in (0,1)");
    return (1.0 - eps) * std::log(1.0 / (1.0 - eps)) + eps * std::log(2.0 / eps);
}

/// Bayes risk of the mixture predictor under the three-point prior with
/// Gaussian observations of precision L. Computed as the mutual information
///   sum_theta mass(theta) * KL(p(.|theta) || mixture),
/// by quadrature over a window covering all components to 10 standard
/// deviations. Independent of L (mu absorbs the scale) and <= prior_entropy.
inline double bayes_risk_three_point(double eps, double L) {
    const ThreePointPrior tp = three_point(eps, L);
    const double sigma = 1.0 / std::sqrt(L);
    const double half_width = tp.mu + 10.0 * sigma;
    const double log_norm = 0.5 * std::log(L / (2.0 * M_PI));

    auto log_component = [&](double x, double theta) {
        const double z = x - theta;
        return log_norm - (0.5 * L) * z * z;
    };
    auto log_mixture = [&](double x) {
        return log_sum_exp({std::log(1.0 - eps) + log_component(x, 0.0),
                            std::log(0.5 * eps) + log_component(x, tp.mu),
                            std::log(0.5 * eps) + log_component(x, -tp.mu)});
    };
    auto kl = [&](double theta) {
        auto integrand = [&](double x) {
            const double lp = log_component(x, theta);
            return std::exp(lp) * (lp - log_mixture(x));
        };
        return quadrature_oracle(integrand, Interval{-half_width, half_width}, 1e-13);
    };
    return (1.0 - eps) * kl(0.0) + (0.5 * eps) * (kl(tp.mu) + kl(-tp.mu));
}

/// Minimax-regret lower reference (B/2) sqrt(2 Ltot ln(d / sqrt(Ltot)));
/// requires d > sqrt(Ltot).
inline double minimax_regret_lower(double B, double Ltot, int d) {
    if (!(B > 0.0) || !(Ltot > 0.0) || d < 1) {
        throw std::invalid_argument("minimax_regret_lower: requires B, Ltot > 0 and d >= 1");
    }
    if (!(d > std::sqrt(Ltot))) {
        throw std::domain_error("minimax_regret_lower: requires d > sqrt(Ltot)");
    }
    return (0.5 * B) * std::sqrt(2.0 * Ltot * std::log(d / std::sqrt(Ltot)));
}

struct LfpDiagnostics {
    double p_d_chebyshev{};  // (1-c)^2 / (c^2 d eps), bound on the out-of-ball mass
    double d_eps{};          // expected support size; regime wants d*eps -> inf
    double risk_scale{};     // d eps ln(1/eps), the Bayes-risk magnitude
};

/// Regime diagnostics for the product three-point prior restricted to the
/// l1 ball. The parameters must satisfy the coupling eps*mu = (1-c)B/d with
/// mu from three_point(eps, L); the returned magnitudes document how far the
/// configuration is into the eps -> 0, d*eps -> inf regime (the conclusion is
/// a limit statement, so the numbers are reported, not asserted).
inline LfpDiagnostics lfp_diagnostics(double eps, double c, double B, int d, double L) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("lfp_diagnostics: c must be in (0,1)");
    if (!(B > 0.0) || d < 1) {
        throw std::invalid_argument("lfp_diagnostics: requires B > 0 and d >= 1");
    }
    const ThreePointPrior tp = three_point(eps, L);
    const double target = (1.0 - c) * B / d;
    const double coupled = eps * tp.mu;
    if (!(std::abs(coupled - target) <= 1e-6 * std::max(target, coupled))) {
        throw std::invalid_argument(
            "lfp_diagnostics: consistency violation, eps*mu must equal (1-c)*B/d");
    }
    const double de = static_cast<double>(d) * eps;
    return {(1.0 - c) * (1.0 - c) / (c * c * de), de, de * std::log(1.0 / eps)};
}

/// The eps solving eps * mu(eps) = (1-c)B/d for the given (c, B, d, L);
/// eps*mu is increasing in eps below exp(-1/2), so the solution is unique.
/// Throws if the target is not reachable in that range.
inline double lfp_consistent_eps(double c, double B, int d, double L) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("lfp_consistent_eps: c must be in (0,1)");
    if (!(B > 0.0) || d < 1 || !(L > 0.0)) {
        throw std::invalid_argument("lfp_consistent_eps: requires B, L > 0 and d >= 1");
    }
    const double target = (1.0 - c) * B / d;
    const double hi = std::exp(-0.5);
    auto coupled = [&](double log_eps) {
        const double e = std::exp(log_eps);
        return e * three_point(e, L).mu - target;
    };
    if (coupled(std::log(hi)) < 0.0) {
        throw std::domain_error("lfp_consistent_eps: target out of range, decrease B/d");
    }
    const double log_eps = bisect_root(coupled, std::log(1e-300), std::log(hi), 1e-12);
    return std::exp(log_eps);
}

}  // namespace l1regret
