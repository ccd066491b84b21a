#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l1regret {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kSqrt2Pi = 2.506628274631000502;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727418;

/// Integration range; lo may be -inf and hi may be +inf, but lo < hi always.
struct Interval {
    double lo{-kInf};
    double hi{kInf};

    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

inline void check_interval(const Interval& iv, const char* where) {
    if (!(iv.lo < iv.hi)) {
        throw std::invalid_argument(std::string(where) + ": interval requires lo < hi");
    }
}

/// Thrown when an integral provably diverges for the given inputs.
class divergence_error : public std::runtime_error {
  public:
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Gaussian kernels
// ---------------------------------------------------------------------------

inline double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

/// Standard normal CDF. erfc keeps full relative accuracy in the lower tail,
/// and Phi(x)+Phi(-x) = (erfc(-z)+erfc(z))/2 = 1 to within an ulp.
inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Scaled complementary error function, exp(x^2) * erfc(x).
///
/// Needed for log-domain Gaussian tails: erfc(x) underflows near x = 27 while
/// erfcx stays O(1/x). Uses the direct product where exp(x^2) is exact enough
/// and the Laplace continued fraction (modified Lentz) for larger arguments.
inline double erfcx(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) {
        // erfcx(x) = 2 exp(x^2) - erfcx(-x); overflows for x < -26.6.
        double e = 2.0 * std::exp(x * x);
        return std::isfinite(e) ? e - erfcx(-x) : kInf;
    }
    if (x < 4.0) return std::exp(x * x) * std::erfc(x);
    if (x > 6.7e7) return 1.0 / (x * std::sqrt(M_PI));  // leading asymptotic; exact at +inf

    // f = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), erfcx = f/sqrt(pi)
    const double tiny = 1e-300;
    double f = tiny, c = f, d = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double a = (k == 1) ? 1.0 : 0.5 * static_cast<double>(k - 1);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return f / std::sqrt(M_PI);
}

/// ln(1 - exp(t)) for t <= 0.
inline double log1mexp(double t) {
    if (t >= 0.0) return (t == 0.0) ? -kInf : kNaN;
    return (t > -M_LN2) ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t));
}

/// ln(1 - Phi(x)), valid for all x without underflow. Full relative accuracy
/// on both sides: log1p of the small CDF for x <= 0, erfcx for x > 0.
inline double log_std_normal_tail(double x) {
    if (std::isinf(x)) return x > 0 ? -kInf : 0.0;
    if (x <= 0.0) return std::log1p(-0.5 * std::erfc(-x / std::sqrt(2.0)));
    return std::log(erfcx(x / std::sqrt(2.0))) - 0.5 * x * x - M_LN2;
}

/// Phi(b) - Phi(a) for a < b, evaluated tail-first to avoid cancellation.
inline double normal_interval_mass(double a, double b) {
    const double s = std::sqrt(2.0);
    if (a >= 0.0) return 0.5 * (std::erfc(a / s) - std::erfc(b / s));
    if (b <= 0.0) return 0.5 * (std::erfc(-b / s) - std::erfc(-a / s));
    return 0.5 * (2.0 - std::erfc(b / s) - std::erfc(-a / s));
}

/// ln(Phi(b) - Phi(a)) for a < b; finite for tail arguments far beyond the
/// underflow point of the linear version.
inline double log_normal_interval_mass(double a, double b) {
    if (a >= 0.0) {
        const double la = log_std_normal_tail(a);
        const double lb = log_std_normal_tail(b);  // -inf when b = +inf
        return la + log1mexp(std::min(lb - la, 0.0));
    }
    if (b <= 0.0) return log_normal_interval_mass(-b, -a);
    return std::log(normal_interval_mass(a, b));
}

/// Integral of exp(-(x-center)^2 / (2 variance)) over iv.
inline double gaussian_segment(const Interval& iv, double center, double variance) {
    check_interval(iv, "gaussian_segment");
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian_segment: variance must be > 0");
    const double s = std::sqrt(variance);
    return kSqrt2Pi * s * normal_interval_mass((iv.lo - center) / s, (iv.hi - center) / s);
}

/// ln of gaussian_segment; safe in the far tails.
inline double log_gaussian_segment(const Interval& iv, double center, double variance) {
    check_interval(iv, "log_gaussian_segment");
    if (!(variance > 0.0)) throw std::invalid_argument("log_gaussian_segment: variance must be > 0");
    const double s = std::sqrt(variance);
    return kLogSqrt2Pi + std::log(s) +
           log_normal_interval_mass((iv.lo - center) / s, (iv.hi - center) / s);
}

/// Integral of exp(-rate*x) over iv, closed form.
/// Diverges unless rate > 0 when hi = +inf and rate < 0 when lo = -inf.
inline double exp_linear_segment(const Interval& iv, double rate) {
    check_interval(iv, "exp_linear_segment");
    const bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
    if ((hi_inf && rate <= 0.0) || (lo_inf && rate >= 0.0)) {
        throw divergence_error("exp_linear_segment: integral diverges");
    }
    if (rate == 0.0) return iv.hi - iv.lo;
    if (hi_inf) return std::exp(-rate * iv.lo) / rate;
    if (lo_inf) return std::exp(-rate * iv.hi) / (-rate);
    return (std::exp(-rate * iv.lo) - std::exp(-rate * iv.hi)) / rate;
}

/// ln of exp_linear_segment.
inline double log_exp_linear_segment(const Interval& iv, double rate) {
    check_interval(iv, "log_exp_linear_segment");
    const bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
    if ((hi_inf && rate <= 0.0) || (lo_inf && rate >= 0.0)) {
        throw divergence_error("log_exp_linear_segment: integral diverges");
    }
    if (rate == 0.0) return std::log(iv.hi - iv.lo);
    if (hi_inf) return -rate * iv.lo - std::log(rate);
    if (lo_inf) return -rate * iv.hi - std::log(-rate);
    if (rate > 0.0) return -rate * iv.lo + log1mexp(-rate * (iv.hi - iv.lo)) - std::log(rate);
    return -rate * iv.hi + log1mexp(rate * (iv.hi - iv.lo)) - std::log(-rate);
}

/// log(sum(exp(terms))). The max term is factored out and the remainder goes
/// through log1p, so a dominant term keeps tiny corrections at full relative
/// precision (partition values behave like 1 + 1e-24 at large penalties).
inline double log_sum_exp(const std::vector<double>& terms) {
    if (terms.empty()) return -kInf;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i] > terms[imax]) imax = i;
    }
    const double m = terms[imax];
    if (std::isinf(m)) return m;
    double rest = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i != imax) rest += std::exp(terms[i] - m);
    }
    return m + std::log1p(rest);
}

// ---------------------------------------------------------------------------
// 1-D search
// ---------------------------------------------------------------------------

struct Max1dResult {
    double argmax{};
    double max{};
    bool at_upper_boundary{};  // best scan point was the right endpoint
};

/// Maximize f over [lo, hi]: uniform scan (at least 257 points) followed by
/// golden-section refinement of the best bracket. Deterministic and robust at
/// kinks, where derivative-based search is not. The returned max is >= f at
/// every scanned point.
template <class F>
Max1dResult maximize_1d(F&& f, double lo, double hi, double tol, int grid_points = 257) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_1d: requires lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("maximize_1d: requires tol > 0");
    const int n = grid_points < 257 ? 257 : grid_points;
    const double h = (hi - lo) / (n - 1);

    int ibest = 0;
    double fbest = -kInf;
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? hi : lo + i * h;
        const double v = f(x);
        if (v > fbest) {
            fbest = v;
            ibest = i;
        }
    }
    double xbest = (ibest == n - 1) ? hi : lo + ibest * h;

    double a = (ibest == 0) ? lo : lo + (ibest - 1) * h;
    double b = (ibest == n - 1) ? hi : lo + (ibest + 1) * h;
    const double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
        if (f1 > fbest) {
            fbest = f1;
            xbest = x1;
        }
        if (f2 > fbest) {
            fbest = f2;
            xbest = x2;
        }
    }
    return {xbest, fbest, ibest == n - 1};
}

/// Bisection on [lo, hi]; requires a sign change (or a zero endpoint).
/// Returns the midpoint of a bracket of width <= tol.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect_root: requires lo <= hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    for (int it = 0; it < 2000 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // bracket at machine resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

namespace detail {

struct QuadState {
    long evals = 0;
    long budget = 4'000'000;
    bool converged = true;
};

template <class G>
double eval_clamped(G& g, double x, QuadState& st) {
    ++st.evals;
    const double v = g(x);
    return std::isfinite(v) ? v : 0.0;
}

template <class G>
double adaptive_simpson(G& g, double a, double b, double fa, double fm, double fb, double whole,
                        double eps, int depth, QuadState& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval_clamped(g, lm, st), frm = eval_clamped(g, rm, st);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0 || (b - a) < 1e-14 || st.evals > st.budget) {
        st.converged = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, st) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, st);
}

}  // namespace detail

/// Independent adaptive-Simpson estimate of the integral of f over iv with
/// estimated error <= tol. Unbounded intervals are mapped smoothly onto
/// (-1, 1); non-finite integrand values (possible only at the mapped
/// endpoints of a decaying integrand) are treated as zero.
template <class F>
double quadrature_oracle(F&& f, Interval iv, double tol) {
    check_interval(iv, "quadrature_oracle");
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature_oracle: requires tol > 0");

    const bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
    auto run = [&](auto&& g, double a, double b) {
        detail::QuadState st;
        // seed the recursion with a few panels so a sign-symmetric integrand
        // cannot fool the first error estimate
        const int seed_panels = 8;
        double total = 0.0;
        for (int i = 0; i < seed_panels; ++i) {
            const double pa = a + (b - a) * i / seed_panels;
            const double pb = a + (b - a) * (i + 1) / seed_panels;
            const double fa = detail::eval_clamped(g, pa, st);
            const double fb = detail::eval_clamped(g, pb, st);
            const double fm = detail::eval_clamped(g, 0.5 * (pa + pb), st);
            const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
            total += detail::adaptive_simpson(g, pa, pb, fa, fm, fb, whole,
                                              tol / seed_panels, 60, st);
        }
        if (!st.converged) {
            throw std::runtime_error("quadrature_oracle: subdivision budget exhausted");
        }
        return total;
    };

    if (lo_inf && hi_inf) {
        auto g = [&f](double t) {
            const double u = 1.0 - t * t;
            return f(t / u) * (1.0 + t * t) / (u * u);
        };
        return run(g, -1.0, 1.0);
    }
    if (hi_inf) {
        const double lo = iv.lo;
        auto g = [&f, lo](double t) {
            const double u = 1.0 - t;
            return f(lo + (1.0 + t) / u) * 2.0 / (u * u);
        };
        return run(g, -1.0, 1.0);
    }
    if (lo_inf) {
        const double hi = iv.hi;
        auto g = [&f, hi](double t) {
            const double u = 1.0 + t;
            return f(hi - (1.0 - t) / u) * 2.0 / (u * u);
        };
        return run(g, -1.0, 1.0);
    }
    return run(f, iv.lo, iv.hi);
}

}  // namespace l1regret
