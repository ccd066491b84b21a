// Command-line surface: penalty sweeps, bound tables, online runs,
// lower-bound diagnostics. CSV output, optional SVG chart for the sweep.
//
// Exit codes: 0 success, 1 numeric/domain failure, 2 usage failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l1regret/complexity.hpp"
#include "l1regret/csv.hpp"
#include "l1regret/lowerbound.hpp"
#include "l1regret/online.hpp"
#include "l1regret/penalty.hpp"
#include "l1regret/priors.hpp"
#include "l1regret/svg.hpp"

namespace {

using namespace l1regret;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < points; ++i) {
        // endpoints exact; exp(log(...)) would drift them by an ulp
        const double v = (i == 0) ? lo
                         : (i == points - 1) ? hi
                                             : std::exp(la + (lb - la) * i / (points - 1));
        out.push_back(v);
    }
    return out;
}

struct SweepArgs {
    double lam_min = 0.1, lam_max = 10.0, u_max = 0.0;
    int points = 50, grid = 1024;
    std::string out = "sweep.csv", svg;
};

int run_sweep(const SweepArgs& a) {
    if (!(a.lam_min > 0.0) || !(a.lam_max >= a.lam_min)) {
        throw UsageError("sweep: need 0 < --lam-min <= --lam-max");
    }
    if (a.points < 1) throw UsageError("sweep: --points must be >= 1");
    if (a.grid < 2) throw UsageError("sweep: --grid must be >= 2");

    const auto rows = sweep_lambda(log_spaced(a.lam_min, a.lam_max, a.points), a.u_max, a.grid);

    CsvWriter csv(a.out);
    csv.header("lambda,shtarkov,regret_st,regret_jeffreys,st_upper,argmax_u_st,argmax_u_jeffreys");
    for (const auto& r : rows) {
        csv.row(r.lam, r.shtarkov, r.regret_st, r.regret_jeffreys, r.st_upper, r.argmax_u_st,
                r.argmax_u_jeffreys);
    }
    csv.close();

    if (!a.svg.empty()) {
        SvgSeries optimal{"optimal (exact)", "#000000", {}};
        SvgSeries st{"spike-and-tails", "#d62728", {}};
        SvgSeries jeff{"tilted Jeffreys", "#1f77b4", {}};
        for (const auto& r : rows) {
            optimal.points.emplace_back(r.lam, r.shtarkov);
            st.points.emplace_back(r.lam, r.regret_st);
            jeff.points.emplace_back(r.lam, r.regret_jeffreys);
        }
        std::ofstream f(a.svg, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open SVG output: " + a.svg);
        f << line_chart_svg({optimal, st, jeff}, "lambda", "worst-case regret");
    }
    std::cout << "wrote " << rows.size() << " rows to " << a.out << "\n";
    return 0;
}

struct BoundsArgs {
    int d = 1000000, n = 100;
    double L = 1.0, B = 1.0;
    std::string out = "bounds.csv";
};

int run_bounds(const BoundsArgs& a) {
    if (a.d < 1 || a.n < 1 || !(a.L > 0.0) || !(a.B > 0.0)) {
        throw UsageError("bounds: need --d >= 1, --n >= 1, --L > 0, --B > 0");
    }
    const double lam = lambda_star(a.L, a.n, a.d);  // domain error when d <= sqrt(L n)
    const double upper = regret_upper_bound(a.B, a.L, a.n, a.d);
    const double lower = minimax_regret_lower(a.B, a.L * a.n, a.d);

    CsvWriter csv(a.out);
    csv.header("d,n,L,B,lambda_star,upper_bound,lower_bound,ratio");
    csv.row(a.d, a.n, a.L, a.B, lam, upper, lower, upper / lower);
    csv.close();
    std::cout << "lambda_star=" << csv_cell(lam) << " upper=" << csv_cell(upper)
              << " lower=" << csv_cell(lower) << " ratio=" << csv_cell(upper / lower) << "\n";
    return 0;
}

struct OnlineArgs {
    int d = 100, n = 50;
    double L = 1.0, B = 1.0;
    std::string lam = "auto", data = "adversarial", out = "online.csv";
    std::uint64_t seed = 0;
};

int run_online_cmd(const OnlineArgs& a) {
    OnlineConfig cfg;
    cfg.d = a.d;
    cfg.n = a.n;
    cfg.smoothness = a.L;
    cfg.radius = a.B;
    cfg.seed = a.seed;
    cfg.data_mode =
        (a.data == "gaussian") ? DataMode::iid_gaussian : DataMode::adversarial_mean;
    if (a.lam != "auto") {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(a.lam, &pos);
        } catch (const std::exception&) {
            throw UsageError("online: --lam must be a number or 'auto'");
        }
        if (pos != a.lam.size()) throw UsageError("online: --lam must be a number or 'auto'");
        cfg.lam = v;
    }

    const OnlineRunResult res = run_online(cfg);

    CsvWriter csv(a.out);
    csv.header("t,step_loss,cum_regret_luckiness,cum_regret_ball");
    for (int t = 1; t <= a.n; ++t) {
        const std::size_t ti = static_cast<std::size_t>(t - 1);
        csv.row(t, res.step_losses[ti], res.cum_regret_luckiness[ti], res.cum_regret_ball[ti]);
    }
    const double step_sum =
        std::accumulate(res.step_losses.begin(), res.step_losses.end(), 0.0);
    csv.row(std::string("summary"), step_sum, res.cumulative_regret_luckiness,
            res.cumulative_regret_ball);
    csv.close();

    std::cout << "lambda=" << csv_cell(res.lam) << "\n"
              << "cumulative_regret_ball=" << csv_cell(res.cumulative_regret_ball) << "\n";
    if (std::isnan(res.bound)) {
        std::cout << "bound=undefined (d <= sqrt(L*n))\n";
    } else {
        std::cout << "bound=" << csv_cell(res.bound) << "\n"
                  << "within_bound=" << (res.cumulative_regret_ball <= res.bound ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

struct LowerboundArgs {
    std::string eps_list = "0.1,0.01,0.001";
    double L = 1.0;
    std::string out = "lowerbound.csv";
    std::optional<double> c, B;
    std::optional<int> d;
};

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string tok =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (tok.empty()) throw UsageError("lowerbound: malformed --eps-list");
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw UsageError("lowerbound: malformed --eps-list");
        }
        if (pos != tok.size()) throw UsageError("lowerbound: malformed --eps-list");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw UsageError("lowerbound: malformed --eps-list");
    return out;
}

int run_lowerbound(const LowerboundArgs& a) {
    const std::vector<double> eps_values = parse_eps_list(a.eps_list);
    const bool want_diag = a.c.has_value() || a.B.has_value() || a.d.has_value();
    if (want_diag && !(a.c && a.B && a.d)) {
        throw UsageError("lowerbound: --c, --B and --d must be given together");
    }

    std::optional<LfpDiagnostics> diag;
    if (want_diag) {
        // the coupling eps*mu = (1-c)B/d pins one epsilon; report that regime
        const double eps_star = lfp_consistent_eps(*a.c, *a.B, *a.d, a.L);
        diag = lfp_diagnostics(eps_star, *a.c, *a.B, *a.d, a.L);
    }

    CsvWriter csv(a.out);
    csv.header(want_diag ? "eps,mu,entropy,bayes_risk,ratio,P_d_bound,d_eps,risk_scale"
                         : "eps,mu,entropy,bayes_risk,ratio");
    for (double eps : eps_values) {
        const ThreePointPrior tp = three_point(eps, a.L);
        const double entropy = prior_entropy(eps);
        const double risk = bayes_risk_three_point(eps, a.L);
        if (want_diag) {
            csv.row(eps, tp.mu, entropy, risk, risk / entropy, diag->p_d_chebyshev, diag->d_eps,
                    diag->risk_scale);
        } else {
            csv.row(eps, tp.mu, entropy, risk, risk / entropy);
        }
    }
    csv.close();
    std::cout << "wrote " << eps_values.size() << " rows to " << a.out << "\n";
    return 0;
}

struct WeightsArgs {
    double L = 1.0;
    int dims = 100;
    std::string out = "weights.csv";
};

int run_weights(const WeightsArgs& a) {
    if (a.dims < 1) throw UsageError("weights: --dims must be >= 1");
    if (!(a.L > 0.0)) throw UsageError("weights: --L must be > 0");
    const std::vector<double> lams = infinite_dim_weights(a.L, a.dims);
    const std::vector<double> partials = infinite_dim_bound_partials(a.L, a.dims);

    CsvWriter csv(a.out);
    csv.header("j,lambda_j,partial_bound");
    for (int j = 1; j <= a.dims; ++j) {
        const std::size_t ji = static_cast<std::size_t>(j - 1);
        csv.row(j, lams[ji], partials[ji]);
    }
    csv.close();
    std::cout << "wrote " << a.dims << " rows to " << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Minimax-regret toolkit for l1-penalized Gaussian logarithmic-loss prediction.\n"
        "Set L1REGRET_THREADS to cap sweep parallelism (row order is always deterministic)."};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "Worst-case regret of the spike-and-tails and tilted Jeffreys priors vs the "
                 "exact minimax regret, over a log-spaced penalty grid");
    cmd_sweep->add_option("--lam-min", sweep.lam_min, "smallest penalty weight")
        ->capture_default_str();
    cmd_sweep->add_option("--lam-max", sweep.lam_max, "largest penalty weight")
        ->capture_default_str();
    cmd_sweep->add_option("--points", sweep.points, "number of log-spaced grid points")
        ->capture_default_str();
    cmd_sweep->add_option("--u-max", sweep.u_max,
                          "data-center search range (default 0 = 10 + 5*lambda per row)")
        ->capture_default_str();
    cmd_sweep->add_option("--grid", sweep.grid, "scan resolution of the inner maximization")
        ->capture_default_str();
    cmd_sweep->add_option("--out", sweep.out, "output CSV path")->capture_default_str();
    cmd_sweep->add_option("--svg", sweep.svg, "also write an SVG chart to this path");

    BoundsArgs bounds;
    auto* cmd_bounds = app.add_subcommand(
        "bounds", "Regret upper bound, minimax lower bound and their ratio for one (d,n,L,B)");
    cmd_bounds->add_option("--d", bounds.d, "dimension")->capture_default_str();
    cmd_bounds->add_option("--n", bounds.n, "horizon")->capture_default_str();
    cmd_bounds->add_option("--L", bounds.L, "per-step smoothness")->capture_default_str();
    cmd_bounds->add_option("--B", bounds.B, "l1-ball radius")->capture_default_str();
    cmd_bounds->add_option("--out", bounds.out, "output CSV path")->capture_default_str();

    OnlineArgs online;
    auto* cmd_online = app.add_subcommand(
        "online", "Sequential Bayesian prediction run with per-step losses and regrets");
    cmd_online->add_option("--d", online.d, "dimension")->capture_default_str();
    cmd_online->add_option("--n", online.n, "number of rounds")->capture_default_str();
    cmd_online->add_option("--L", online.L, "per-step smoothness")->capture_default_str();
    cmd_online->add_option("--B", online.B, "l1-ball radius")->capture_default_str();
    cmd_online->add_option("--lam", online.lam, "penalty weight, a number or 'auto'")
        ->capture_default_str();
    cmd_online->add_option("--data", online.data, "data stream")
        ->check(CLI::IsMember({"adversarial", "gaussian"}))
        ->capture_default_str();
    cmd_online->add_option("--seed", online.seed, "RNG seed for the gaussian stream")
        ->capture_default_str();
    cmd_online->add_option("--out", online.out, "output CSV path")->capture_default_str();

    LowerboundArgs lower;
    auto* cmd_lower = app.add_subcommand(
        "lowerbound", "Three-point-prior Bayes risk vs entropy; optional regime diagnostics");
    cmd_lower->add_option("--eps-list", lower.eps_list, "comma-separated epsilon values")
        ->capture_default_str();
    cmd_lower->add_option("--L", lower.L, "observation precision")->capture_default_str();
    cmd_lower->add_option("--out", lower.out, "output CSV path")->capture_default_str();
    double lb_c = 0.0, lb_B = 0.0;
    int lb_d = 0;
    auto* opt_c = cmd_lower->add_option("--c", lb_c, "slack split in (0,1) for the diagnostics");
    auto* opt_B = cmd_lower->add_option("--B", lb_B, "l1-ball radius for the diagnostics");
    auto* opt_d = cmd_lower->add_option("--d", lb_d, "dimension for the diagnostics");

    WeightsArgs weights;
    auto* cmd_weights = app.add_subcommand(
        "weights", "Per-dimension penalty schedule for countably infinite models");
    cmd_weights->add_option("--L", weights.L, "smoothness")->capture_default_str();
    cmd_weights->add_option("--dims", weights.dims, "number of dimensions to emit")
        ->capture_default_str();
    cmd_weights->add_option("--out", weights.out, "output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_sweep->parsed()) return run_sweep(sweep);
        if (cmd_bounds->parsed()) return run_bounds(bounds);
        if (cmd_online->parsed()) return run_online_cmd(online);
        if (cmd_lower->parsed()) {
            if (opt_c->count()) lower.c = lb_c;
            if (opt_B->count()) lower.B = lb_B;
            if (opt_d->count()) lower.d = lb_d;
            return run_lowerbound(lower);
        }
        if (cmd_weights->parsed()) return run_weights(weights);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
