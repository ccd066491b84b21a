#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef L1REGRET_CLI_PATH
#error "L1REGRET_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(L1REGRET_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);) out.push_back(line);
    return out;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("l1regret_test_" + name);
}

}  // namespace

TEST_CASE("cli rejects unknown flags and missing subcommands") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("sweep --no-such-flag 1") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("sweep --help") == 0);
}

TEST_CASE("every subcommand succeeds with defaults only") {
    const fs::path dir = fs::temp_directory_path() / "l1regret_defaults";
    fs::create_directories(dir);
    for (const std::string sub : {"sweep", "bounds", "online", "lowerbound", "weights"}) {
        const std::string cmd = "cd " + dir.string() + " && " + L1REGRET_CLI_PATH + " " + sub +
                                " > /dev/null 2>&1";
        INFO(sub);
        CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    }
    // the default sweep reproduces the expected tail ordering
    std::ifstream f(dir / "sweep.csv");
    std::string line, last;
    int count = 0;
    while (std::getline(f, line)) {
        ++count;
        last = line;
    }
    CHECK(count == 51);  // header + 50 rows
    fs::remove_all(dir);
}

TEST_CASE("sweep writes the pinned header and a single-row grid works") {
    const fs::path out = temp_file("sweep_one.csv");
    CHECK(run_cli("sweep --points 1 --lam-min 2 --lam-max 2 --grid 512 --out " +
                  out.string()) == 0);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] ==
          "lambda,shtarkov,regret_st,regret_jeffreys,st_upper,argmax_u_st,argmax_u_jeffreys");
    // lambda=2 row starts with the exact lambda and the frozen shtarkov value
    CHECK(rows[1].substr(0, 2) == "2,");
    CHECK(rows[1].find("0.0084548593") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("sweep flag errors exit 2") {
    CHECK(run_cli("sweep --points 0") == 2);
    CHECK(run_cli("sweep --lam-min -1") == 2);
    CHECK(run_cli("sweep --lam-min 2 --lam-max 1") == 2);
}

TEST_CASE("sweep can emit an SVG chart") {
    const fs::path out = temp_file("sweep.csv");
    const fs::path svg = temp_file("sweep.svg");
    CHECK(run_cli("sweep --points 8 --grid 512 --out " + out.string() + " --svg " +
                  svg.string()) == 0);
    const std::string body = slurp(svg);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.rfind("</svg>") != std::string::npos);
    CHECK(body.find(">lambda<") != std::string::npos);
    CHECK(body.find(">worst-case regret<") != std::string::npos);
    CHECK(body.size() <= 200 * 1024);
    fs::remove(out);
    fs::remove(svg);
}

TEST_CASE("bounds emits the factor-of-two table and fails cleanly at the domain edge") {
    const fs::path out = temp_file("bounds.csv");
    CHECK(run_cli("bounds --out " + out.string()) == 0);  // defaults reproduce the headline run
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "d,n,L,B,lambda_star,upper_bound,lower_bound,ratio");
    CHECK(rows[1].substr(0, 14) == "1000000,100,1,");
    fs::remove(out);

    CHECK(run_cli("bounds --d 10 --n 100 --L 1 --out " + out.string()) == 1);
    CHECK(run_cli("bounds --d 0") == 2);
}

TEST_CASE("online run writes per-step rows plus a summary and prints the bound") {
    const fs::path out = temp_file("online.csv");
    CHECK(run_cli("online --d 5 --n 4 --L 1 --B 1 --lam auto --data adversarial --seed 7 --out " +
                  out.string()) == 0);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 6);  // header + 4 steps + summary
    CHECK(rows[0] == "t,step_loss,cum_regret_luckiness,cum_regret_ball");
    CHECK(rows[1].substr(0, 2) == "1,");
    CHECK(rows[5].substr(0, 8) == "summary,");
    fs::remove(out);
}

TEST_CASE("online is byte-identical across reruns with a fixed seed") {
    const fs::path a = temp_file("online_a.csv");
    const fs::path b = temp_file("online_b.csv");
    const std::string base = "online --d 6 --n 9 --L 2 --B 0.5 --data gaussian --lam 3 --seed 99";
    CHECK(run_cli(base + " --out " + a.string()) == 0);
    CHECK(run_cli(base + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("online invariant violations exit 1, usage errors exit 2") {
    CHECK(run_cli("online --d 10 --n 100 --L 1 --lam auto") == 1);  // d <= sqrt(Ln)
    CHECK(run_cli("online --lam nonsense") == 2);
    CHECK(run_cli("online --data weird") == 2);
}

TEST_CASE("lowerbound rows and the monotone ratio column") {
    const fs::path out = temp_file("lower.csv");
    CHECK(run_cli("lowerbound --eps-list 0.5,0.1,0.01 --out " + out.string()) == 0);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "eps,mu,entropy,bayes_risk,ratio");
    // eps=0.5 entropy column
    CHECK(rows[1].find("1.0397207708") != std::string::npos);
    fs::remove(out);

    CHECK(run_cli("lowerbound --eps-list '' ") == 2);
    CHECK(run_cli("lowerbound --eps-list 0.1,,0.2") == 2);
    CHECK(run_cli("lowerbound --eps-list 0.1x") == 2);
    CHECK(run_cli("lowerbound --eps-list 2.0") == 1);  // domain failure, not usage
}

TEST_CASE("lowerbound diagnostics columns appear only with the full flag set") {
    const fs::path out = temp_file("lower_diag.csv");
    CHECK(run_cli("lowerbound --eps-list 0.1,0.01 --c 0.5 --B 1 --d 10000 --out " +
                  out.string()) == 0);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "eps,mu,entropy,bayes_risk,ratio,P_d_bound,d_eps,risk_scale");
    fs::remove(out);

    CHECK(run_cli("lowerbound --c 0.5") == 2);  // partial diagnostics flags
}

TEST_CASE("weights table") {
    const fs::path out = temp_file("weights.csv");
    CHECK(run_cli("weights --L 1 --dims 3 --out " + out.string()) == 0);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "j,lambda_j,partial_bound");
    CHECK(rows[1] == "1,1.4142135623730951,1");
    CHECK(rows[2] == "2,1.4142135623730951,1.5");
    CHECK(rows[3].substr(0, 2) == "3,");
    CHECK(rows[3].find("1.544448196790561") != std::string::npos);
    fs::remove(out);

    CHECK(run_cli("weights --dims 0") == 2);
    const fs::path single = temp_file("weights1.csv");
    CHECK(run_cli("weights --dims 1 --out " + single.string()) == 0);
    CHECK(lines_of(slurp(single)).size() == 2);
    fs::remove(single);
}

TEST_CASE("csv cells have no trailing whitespace and round-trip doubles") {
    const fs::path out = temp_file("sweep_rt.csv");
    CHECK(run_cli("sweep --points 3 --lam-min 0.5 --lam-max 4 --grid 512 --out " +
                  out.string()) == 0);
    const std::string body = slurp(out);
    for (const auto& line : lines_of(body)) {
        CHECK(!line.empty());
        CHECK(line.back() != ' ');
        CHECK(line.back() != '\r');
        CHECK(line.find(" ,") == std::string::npos);
    }
    // every numeric cell parses back exactly through %.17g
    const auto rows = lines_of(body);
    std::istringstream cell_stream(rows[1]);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
        const double v = std::stod(cell);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        CHECK(std::stod(buf) == v);
    }
    fs::remove(out);
}
