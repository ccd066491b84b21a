#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "l1regret/complexity.hpp"
#include "l1regret/measures.hpp"
#include "l1regret/penalty.hpp"
#include "l1regret/priors.hpp"

namespace l1regret {

/// Penalty weight sqrt(2 L n ln(d / sqrt(L n))); requires d > sqrt(L n).
inline double lambda_star(double L, int n, int d) {
    if (!(L > 0.0) || n < 1 || d < 1) {
        throw std::invalid_argument("lambda_star: requires L > 0, n >= 1, d >= 1");
    }
    const double root = std::sqrt(L * n);
    if (!(d > root)) {
        throw std::domain_error("lambda_star: requires d > sqrt(L*n)");
    }
    return std::sqrt(2.0 * L * n * std::log(d / root));
}

/// Non-asymptotic regret bound for the l1 ball of radius B:
/// lambda_star * B + ec_upper_bound(d, lambda_star, L*n).
/// B = 0 degenerates to the envelope term alone.
inline double regret_upper_bound(double B, double L, int n, int d) {
    if (!(B >= 0.0)) throw std::invalid_argument("regret_upper_bound: B must be >= 0");
    const double lam = lambda_star(L, n, d);
    return lam * B + ec_upper_bound(d, lam, L * n);
}

/// Separable quadratic loss sum_j (curvature/2)(theta_j - centers[j])^2, up to
/// an additive constant that cancels in every regret.
struct QuadLossSpec {
    double curvature{};
    std::vector<double> centers;
};

struct BatchRegret {
    double luckiness{};
    double ball{};
};

/// Batch regrets of the Bayesian mixture with per-dimension pre-prior w under
/// the loss `loss` and penalty lam*||theta||_1:
///   luckiness: comparator inf_theta [loss + penalty]  (soft-thresholding),
///   ball:      comparator inf over ||theta||_1 <= B   (Euclidean projection).
inline BatchRegret batch_regret(const MixtureMeasure1D& w, double lam, const QuadLossSpec& loss,
                                double B) {
    if (!(loss.curvature > 0.0)) {
        throw std::invalid_argument("batch_regret: curvature must be > 0");
    }
    if (loss.centers.empty()) {
        throw std::invalid_argument("batch_regret: centers must be nonempty");
    }
    const double a = loss.curvature;
    const double log_z = log_partition(w, lam);

    double mix = 0.0;   // sum_j (log_z - I_j)
    double lucky_comp = 0.0;
    for (double u : loss.centers) {
        mix += log_z - integrate_exp(w, ExpQuadIntegrand{a, u, lam, 0.0});
        lucky_comp += penalized_quad_min(a, u, lam);
    }
    const std::vector<double> proj = l1_ball_project(loss.centers, B);
    double dist2 = 0.0;
    for (std::size_t j = 0; j < proj.size(); ++j) {
        const double dz = proj[j] - loss.centers[j];
        dist2 += dz * dz;
    }
    return {mix - lucky_comp, mix - (0.5 * a) * dist2};
}

enum class DataMode { adversarial_mean, iid_gaussian };

struct OnlineConfig {
    int d = 1;
    int n = 1;
    double smoothness = 1.0;       // per-step precision L of the Gaussian loss
    double radius = 1.0;           // comparator ball radius B
    std::optional<double> lam;     // penalty weight; nullopt = lambda_star
    DataMode data_mode = DataMode::adversarial_mean;
    std::uint64_t seed = 0;
};

struct OnlineRunResult {
    double lam{};                             // resolved penalty weight
    std::vector<double> step_losses;          // per-step excess over the ball comparator
    double cumulative_regret_luckiness{};     // batch value at horizon n
    double cumulative_regret_ball{};          // batch value at horizon n
    std::vector<double> comparator_theta;     // l1 projection of the final mean
    double bound{};                           // regret_upper_bound; NaN if d <= sqrt(L n)
    std::vector<double> cum_regret_luckiness; // anytime value after each step
    std::vector<double> cum_regret_ball;      // anytime value after each step
};

/// Sequential Bayesian prediction under the Gaussian logarithmic loss
/// f_X(theta) = (L/2)||X - theta||^2 + (d/2) ln(2 pi / L), with the
/// scale-corrected spike-and-tails pre-prior per dimension.
///
/// The cumulative loss after t steps depends on the data only through the
/// running mean (curvature t*L per dimension), so each predictive loss is the
/// difference of two per-dimension mixture integrals and the whole run
/// telescopes to the batch value. Theta-free constants are cancelled
/// symbolically: step_losses[t] is the excess over the final ball comparator,
/// and their sum reproduces cumulative_regret_ball up to roundoff.
inline OnlineRunResult run_online(const OnlineConfig& cfg) {
    if (cfg.d < 1 || cfg.n < 1) throw std::invalid_argument("run_online: d and n must be >= 1");
    if (!(cfg.smoothness > 0.0)) throw std::invalid_argument("run_online: L must be > 0");
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("run_online: B must be > 0");
    if (cfg.lam && !(*cfg.lam > 0.0)) {
        throw std::invalid_argument("run_online: lam must be > 0 (or auto)");
    }
    const double L = cfg.smoothness;
    const double B = cfg.radius;
    const int d = cfg.d, n = cfg.n;
    const double lam = cfg.lam ? *cfg.lam : lambda_star(L, n, d);

    const MixtureMeasure1D w = st_preprior_scaled(lam, L * n);
    const double log_z = log_partition(w, lam);

    // data
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(d), 0.0));
    if (cfg.data_mode == DataMode::adversarial_mean) {
        // constant stream with the comparator pinned to the ball boundary
        for (auto& row : xs) row[0] = B;
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(L));
        for (auto& row : xs) {
            for (auto& v : row) v = gauss(rng);
        }
    }

    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::vector<double> prev_mix(static_cast<std::size_t>(d), log_z);  // I_{0,j} = log_z
    std::vector<double> mix_delta(static_cast<std::size_t>(n), 0.0);   // sum_j (I_{t-1,j}-I_{t,j})
    std::vector<double> mean_sq_delta(static_cast<std::size_t>(n), 0.0);
    OnlineRunResult out;
    out.lam = lam;
    out.cum_regret_luckiness.resize(static_cast<std::size_t>(n));
    out.cum_regret_ball.resize(static_cast<std::size_t>(n));

    double prev_mean_sq = 0.0;
    for (int t = 1; t <= n; ++t) {
        const std::size_t ti = static_cast<std::size_t>(t - 1);
        const double a = t * L;
        double mean_sq = 0.0, delta = 0.0, mix = 0.0, lucky_comp = 0.0;
        for (int j = 0; j < d; ++j) {
            const std::size_t js = static_cast<std::size_t>(j);
            mean[js] += (xs[ti][js] - mean[js]) / t;
            mean_sq += mean[js] * mean[js];
            const double cur = integrate_exp(w, ExpQuadIntegrand{a, mean[js], lam, 0.0});
            delta += prev_mix[js] - cur;
            prev_mix[js] = cur;
            mix += log_z - cur;
            lucky_comp += penalized_quad_min(a, mean[js], lam);
        }
        mix_delta[ti] = delta;
        mean_sq_delta[ti] = (t - 1) * prev_mean_sq - t * mean_sq;
        prev_mean_sq = mean_sq;

        const std::vector<double> proj_t = l1_ball_project(mean, B);
        double dist2 = 0.0;
        for (int j = 0; j < d; ++j) {
            const double dz = proj_t[static_cast<std::size_t>(j)] - mean[static_cast<std::size_t>(j)];
            dist2 += dz * dz;
        }
        out.cum_regret_luckiness[ti] = mix - lucky_comp;
        out.cum_regret_ball[ti] = mix - (0.5 * a) * dist2;
    }

    out.comparator_theta = l1_ball_project(mean, B);
    // excess of each predictive loss over the final ball comparator
    out.step_losses.resize(static_cast<std::size_t>(n));
    double comp_sq = 0.0;
    for (double v : out.comparator_theta) comp_sq += v * v;
    for (int t = 1; t <= n; ++t) {
        const std::size_t ti = static_cast<std::size_t>(t - 1);
        double dot = 0.0;
        for (int j = 0; j < d; ++j) {
            dot += xs[ti][static_cast<std::size_t>(j)] *
                   out.comparator_theta[static_cast<std::size_t>(j)];
        }
        out.step_losses[ti] =
            mix_delta[ti] + (0.5 * L) * (2.0 * dot - comp_sq + mean_sq_delta[ti]);
    }

    const BatchRegret batch = batch_regret(w, lam, QuadLossSpec{n * L, mean}, B);
    out.cumulative_regret_luckiness = batch.luckiness;
    out.cumulative_regret_ball = batch.ball;
    out.bound = (d > std::sqrt(L * n)) ? regret_upper_bound(B, L, n, d) : kNaN;
    return out;
}

}  // namespace l1regret
