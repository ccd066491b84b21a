#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "l1regret/numerics.hpp"

namespace l1regret {

struct Atom {
    double location{};
    double mass{};
};

struct Piece {
    Interval interval{};
    double level{};
};

/// A 1-D positive measure: point atoms plus a piecewise-constant density on
/// pairwise-disjoint (possibly unbounded) open intervals. Immutable after
/// construction; construction validates the invariants.
class MixtureMeasure1D {
  public:
    MixtureMeasure1D(std::vector<Atom> atoms, std::vector<Piece> pieces)
        : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
        validate();
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

  private:
    void validate() const {
        bool nonzero = false;
        for (const auto& a : atoms_) {
            if (!std::isfinite(a.location)) {
                throw std::invalid_argument("MixtureMeasure1D: atom location must be finite");
            }
            if (!(a.mass > 0.0)) {
                throw std::invalid_argument("MixtureMeasure1D: atom mass must be > 0");
            }
            nonzero = true;
        }
        for (const auto& p : pieces_) {
            check_interval(p.interval, "MixtureMeasure1D");
            if (!(p.level >= 0.0)) {
                throw std::invalid_argument("MixtureMeasure1D: piece level must be >= 0");
            }
            if (p.level > 0.0) nonzero = true;
        }
        if (!nonzero) throw std::invalid_argument("MixtureMeasure1D: measure must be nonzero");

        std::vector<Interval> sorted;
        sorted.reserve(pieces_.size());
        for (const auto& p : pieces_) sorted.push_back(p.interval);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            // open intervals: shared endpoints are fine
            if (sorted[i].lo < sorted[i - 1].hi) {
                throw std::invalid_argument("MixtureMeasure1D: piece intervals must be disjoint");
            }
        }
    }

    std::vector<Atom> atoms_;
    std::vector<Piece> pieces_;
};

/// g(theta) = (curvature/2)(theta - center)^2 + l1_weight*|theta| + offset.
struct ExpQuadIntegrand {
    double curvature{};
    double center{};
    double l1_weight{};
    double offset{};

    double operator()(double theta) const {
        const double dx = theta - center;
        return (0.5 * curvature) * (dx * dx) + l1_weight * std::abs(theta) + offset;
    }
};

namespace detail {

// ln of level * integral of exp(-g) over a sub-interval lying entirely in one
// half-line (sign = sign of theta there). Completing the square reduces the
// quadratic case to a Gaussian segment; the curvature-free case is a pure
// exponential segment.
inline double log_piece_term(const Interval& sub, double sign, double level,
                             const ExpQuadIntegrand& g) {
    const double log_level = std::log(level);
    if (g.curvature > 0.0) {
        const double m = g.center - sign * g.l1_weight / g.curvature;
        const double k =
            sign * g.l1_weight * g.center - g.l1_weight * g.l1_weight / (2.0 * g.curvature);
        return log_level - g.offset - k + log_gaussian_segment(sub, m, 1.0 / g.curvature);
    }
    const double rate = sign * g.l1_weight;
    const bool unbounded = std::isinf(sub.lo) || std::isinf(sub.hi);
    if (rate == 0.0 && unbounded) {
        throw divergence_error(
            "integrate_exp: flat integrand over an unbounded piece diverges");
    }
    return log_level - g.offset + log_exp_linear_segment(sub, rate);
}

}  // namespace detail

/// ln of the integral of exp(-g(theta)) against w. Exact per term: atoms are
/// point evaluations; each density piece is split at theta = 0 (the kink of
/// |theta|) and integrated in closed form. Terms combine through log_sum_exp,
/// so the result keeps full relative precision even when it is 1 + eps in the
/// linear domain.
inline double integrate_exp(const MixtureMeasure1D& w, const ExpQuadIntegrand& g) {
    if (!(g.curvature >= 0.0) || !(g.l1_weight >= 0.0)) {
        throw std::invalid_argument("integrate_exp: curvature and l1_weight must be >= 0");
    }
    if (!std::isfinite(g.center) || !std::isfinite(g.offset)) {
        throw std::invalid_argument("integrate_exp: center and offset must be finite");
    }

    std::vector<double> terms;
    terms.reserve(w.atoms().size() + 2 * w.pieces().size());
    for (const auto& a : w.atoms()) {
        terms.push_back(std::log(a.mass) - g(a.location));
    }
    for (const auto& p : w.pieces()) {
        if (p.level == 0.0) continue;
        const Interval& iv = p.interval;
        if (iv.lo < 0.0 && iv.hi > 0.0) {
            terms.push_back(detail::log_piece_term({iv.lo, 0.0}, -1.0, p.level, g));
            terms.push_back(detail::log_piece_term({0.0, iv.hi}, +1.0, p.level, g));
        } else {
            const double sign = (iv.hi <= 0.0) ? -1.0 : +1.0;
            terms.push_back(detail::log_piece_term(iv, sign, p.level, g));
        }
    }
    return log_sum_exp(terms);
}

/// ln w[exp(-l1_weight * |theta|)].
inline double log_partition(const MixtureMeasure1D& w, double l1_weight) {
    if (!(l1_weight >= 0.0)) {
        throw std::invalid_argument("log_partition: l1_weight must be >= 0");
    }
    return integrate_exp(w, ExpQuadIntegrand{0.0, 0.0, l1_weight, 0.0});
}

/// Pushforward of w under theta -> theta/s: atom locations and piece endpoints
/// divide by s, density levels multiply by s (mass preserving).
inline MixtureMeasure1D scale_measure(const MixtureMeasure1D& w, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("scale_measure: s must be positive and finite");
    }
    std::vector<Atom> atoms;
    atoms.reserve(w.atoms().size());
    for (const auto& a : w.atoms()) atoms.push_back({a.location / s, a.mass});
    std::vector<Piece> pieces;
    pieces.reserve(w.pieces().size());
    for (const auto& p : w.pieces()) {
        pieces.push_back({{p.interval.lo / s, p.interval.hi / s}, p.level * s});
    }
    return MixtureMeasure1D(std::move(atoms), std::move(pieces));
}

}  // namespace l1regret
