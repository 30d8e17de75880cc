// Acceptance checks. Prints one PASS/FAIL line per criterion; `--criterion N`
// runs a single one. Exit status is non-zero if any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/classical.hpp"
#include "kicked_top/echo.hpp"
#include "kicked_top/error.hpp"
#include "kicked_top/gauss.hpp"
#include "kicked_top/otoc.hpp"
#include "kicked_top/sweep.hpp"
#include "oracles.hpp"

using namespace kicked_top;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SpinParams spin(int j2, double kappa0) { return {j2, kappa0, kPi / 2}; }

double c_inf(int j2, double kappa0, int n) { return otoc_infinite(spin(j2, kappa0), n).values[n - 1].c_inf; }

// 1. exact OTOC values
Outcome exact_values() {
    Outcome o;
    double err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double k = 3 * kPi * i / 19;
        err = std::max({err, std::abs(chebyshev::three_qubit_otoc(1, k) - 0.625), std::abs(c_inf(3, k, 1) - 0.625)});
    }
    o.require(err <= 1e-12, "C(1)=5/8 at 20 kappa0, max err " + fmt("%.1e", err));
    const auto s = otoc_infinite(spin(4, 2 * kPi), 2);
    const double e1 = std::abs(s.values[0].c_inf - 1.0), e2 = std::abs(s.values[1].c_inf - 68.0 / 5);
    o.require(std::max(e1, e2) <= 1e-10, "j=2 (1, 68/5) err " + fmt("%.1e", std::max(e1, e2)));
    double worst = 0.0;
    for (int j2 : {4, 6, 8, 16}) {
        const double j = 0.5 * j2;
        const double want1 = j * (j + 1) / 6, want2 = 2.0 / 15 * j * (j + 1) * (3 * j * j + 3 * j - 1);
        const ComplexMatrix u = floquet_operator(spin(j2, kPi * j));
        for (int n : {1, 2}) {
            const double brute = oracle::otoc(u, n).c_inf;
            const double engine = c_inf(j2, kPi * j, n);
            const double want = n == 1 ? want1 : want2;
            worst = std::max({worst, std::abs(brute - want), std::abs(engine - want)});
        }
    }
    o.require(worst <= 1e-8, "kappa0=pi j closed values for j in {2,3,4,8}, max err " + fmt("%.1e", worst));
    return o;
}

// 2. closed form vs numeric engine
Outcome oracle_equivalence() {
    double otoc_err = 0.0, echo_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double k3 = 1.5 * kPi * i / 49, k4 = 2 * kPi * i / 49;
        const auto s3 = otoc_infinite(spin(3, k3), 64), s4 = otoc_infinite(spin(4, k4), 64);
        for (int n = 1; n <= 64; ++n) {
            otoc_err = std::max(otoc_err, std::abs(s3.values[n - 1].c_inf - chebyshev::three_qubit_otoc(n, k3)));
            otoc_err = std::max(otoc_err, std::abs(s4.values[n - 1].c_inf - chebyshev::four_qubit_otoc(n, k4)));
        }
        for (double d : {0.01, 0.1, 0.5}) {
            const auto e3 = average_fidelity_series(spin(3, k3), d, 64);
            const auto e4 = average_fidelity_series(spin(4, k4), d, 64);
            for (int n = 0; n <= 64; ++n) {
                echo_err = std::max(echo_err, std::abs(e3.values[n].fidelity - chebyshev::three_qubit_avg_echo(n, k3, d)));
                echo_err = std::max(echo_err, std::abs(e4.values[n].fidelity - chebyshev::four_qubit_avg_echo(n, k4, d)));
            }
        }
    }
    Outcome o;
    o.require(otoc_err <= 1e-9, "OTOC max diff " + fmt("%.1e", otoc_err));
    o.require(echo_err <= 1e-9, "averaged echo max diff " + fmt("%.1e", echo_err));
    return o;
}

// 3. Pell, unitarity, parity
Outcome structural() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> kappa(0.0, 4 * kPi);
    double pell = 0.0;
    for (int t = 0; t < 200; ++t) {
        const double k = kappa(rng);
        for (int n = 0; n <= 1000; ++n)
            for (const auto& b : {chebyshev::three_qubit_block(n, k), chebyshev::four_qubit_block(n, k)})
                pell = std::max(pell, std::abs(std::norm(b.alpha) + std::norm(b.beta) - 1.0));
    }
    double unit = 0.0, parity = 0.0;
    for (int j2 = 1; j2 <= 256; ++j2) {
        const auto p = spin(j2, kappa(rng));
        const ComplexMatrix u = floquet_operator(p);
        unit = std::max(unit, unitarity_defect(u));
        if (j2 <= 64 || j2 % 16 == 0) parity = std::max(parity, commutator_norm(u, parity_operator(p)));
    }
    Outcome o;
    o.require(pell <= 1e-12, "Pell n<=1000 max dev " + fmt("%.1e", pell));
    o.require(unit <= 1e-12, "unitarity j<=128 max dev " + fmt("%.1e", unit));
    o.require(parity <= 1e-11, "parity commutator max " + fmt("%.1e", parity));
    return o;
}

// 4. small-kappa0 odd-even structure at j = 3/2
Outcome small_kappa() {
    double sxy = 0.0, sxx = 0.0, odd = 0.0;
    for (double k : {0.01, 0.02, 0.03, 0.04, 0.05}) {
        const auto s = otoc_infinite(spin(3, k), 8);
        for (int n : {2, 4, 6, 8}) {
            const double x = n * n * k * k;
            sxy += x * s.values[n - 1].c_inf;
            sxx += x * x;
        }
        for (int n : {1, 3, 5, 7}) odd = std::max(odd, std::abs(s.values[n - 1].c_inf - 0.625));
    }
    const double coeff = sxy / sxx;
    const double rel = std::abs(coeff - 1.0 / 6) * 6;
    Outcome o;
    o.require(rel <= 0.02, "even-n coefficient " + fmt("%.5f", coeff) + " (" + fmt("%.2f", 100 * rel) + "% from 1/6)");
    o.require(odd <= 1e-4, "odd-n max |C-5/8| " + fmt("%.1e", odd));
    return o;
}

// 5. quantum Lyapunov estimates
Outcome quantum_lyapunov_values() {
    Outcome o;
    const auto est2 = quantum_lyapunov(otoc_infinite(spin(4, 2 * kPi), 2));
    const double exact = 0.5 * std::log(68.0 / 5);
    o.require(std::abs(est2.half - exact) <= 1e-10, "j=2 half-log " + fmt("%.6f", est2.half));
    const int j2 = 128;
    const auto est = quantum_lyapunov(otoc_infinite(spin(j2, kPi * j2 / 2), 2));
    const double target = std::log(64.0) + 0.3;
    o.require(std::abs(est.full - target) <= 0.05, "j=64 ln(C2/C1) " + fmt("%.4f", est.full) + " vs ln(j)+0.3 = " +
                                                       fmt("%.4f", target) + " (half-log " + fmt("%.4f", est.half) + ")");
    return o;
}

// 6. Gauss-sum decomposition
Outcome gauss_sums() {
    double worst = 0.0;
    for (int j2 = 2; j2 <= 64; j2 += 2)
        for (long long s = 1; s <= 8; ++s)
            for (long long r = 1; r < 2 * s; ++r)
                if (std::gcd(r, s) == 1) worst = std::max(worst, decompose_torsion(j2, r, s).reconstruction_error);
    const auto period = verify_periodicity(4, 1, 2, 1000);
    Outcome o;
    o.require(worst <= 1e-11, "reconstruction max err " + fmt("%.1e", worst));
    o.require(period && *period == 8, "j=2 (1,2) period " + (period ? std::to_string(*period) : std::string("none")));
    return o;
}

// 7. classical map
Outcome classical() {
    Outcome o;
    double orbit_err = 0.0;
    for (double k : {0.5, 2.5, 2 * kPi, 30.0}) {
        const auto fp = map_step({0, -1, 0}, k);
        orbit_err = std::max({orbit_err, std::abs(fp.x), std::abs(fp.y + 1), std::abs(fp.z)});
        const auto t = trajectory({0, 0, 1}, k, 4);
        const double want[5][3] = {{0, 0, 1}, {1, 0, 0}, {0, 0, -1}, {-1, 0, 0}, {0, 0, 1}};
        for (int i = 0; i < 5; ++i)
            orbit_err = std::max({orbit_err, std::abs(t[i].x - want[i][0]), std::abs(t[i].y - want[i][1]),
                                  std::abs(t[i].z - want[i][2])});
    }
    o.require(orbit_err <= 1e-14, "fixed point and period-4 orbit max err " + fmt("%.1e", orbit_err));
    const auto t0 = std::chrono::steady_clock::now();
    const double l = lyapunov(2 * kPi, 10000, 1000, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(std::abs(l - 0.84) <= 0.15, "lambda(2 pi) " + fmt("%.4f", l));
    o.require(secs <= 60.0, "runtime " + fmt("%.1f", secs) + " s");
    return o;
}

// 8. echo decay regimes
Outcome echo_regimes() {
    Outcome o;
    const auto weak = average_fidelity_series(spin(16, 2 * kPi), 0.01, 100);
    const auto g = decay_classify(weak, 100);
    o.require(g.regime == DecayRegime::Gaussian, std::string("j=8 d=0.01 ") + to_string(g.regime));
    const auto strong = average_fidelity_series(spin(64, 2 * kPi), 0.1, 60);
    const auto e = decay_classify(strong, presaturation_window(strong));
    o.require(e.regime == DecayRegime::Exponential, std::string("j=32 d=0.1 ") + to_string(e.regime));
    std::vector<double> rates;
    std::string listed;
    for (double d : {0.3, 0.4, 0.5}) {
        const auto s = average_fidelity_series(spin(128, 2 * kPi), d, 40);
        try {
            const auto fit = decay_classify(s, 40);
            rates.push_back(fit.rate);
            listed += (listed.empty() ? "" : "/") + fmt("%.3f", fit.rate);
        } catch (const kicked_top::Error&) {
            listed += (listed.empty() ? "" : "/") + std::string("no fit");
        }
    }
    if (rates.size() == 3) {
        const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
        const double spread = *hi / *lo - 1.0;
        o.require(spread <= 0.25, "j=64 rates " + listed + " spread " + fmt("%.0f", 100 * spread) + "%");
    } else {
        o.require(false, "j=64 rates " + listed);
    }
    const double chaotic = chebyshev::state_fidelity_000(10, 1.5 * kPi, 0.005);
    const double regular = chebyshev::state_fidelity_000(10, 0.3, 0.005);
    o.require(chaotic > regular, "|000> n=10 F(3pi/2)=" + fmt("%.7f", chaotic) + " > F(0.3)=" + fmt("%.7f", regular));
    return o;
}

// 9. state-fidelity expansion at kappa0 = 3 pi / 2
Outcome fidelity_expansion() {
    Outcome o;
    const double d = 1e-4, k = 1.5 * kPi;
    const StateVector north = coherent_state(spin(3, k), 0, 0);
    for (int n = 1; n <= 4; ++n) {
        const double closed = (1 - chebyshev::state_fidelity_000(n, k, d)) / (d * d);
        const double numeric = (1 - state_fidelity(spin(3, k), d, n, north)) / (d * d);
        const bool ok = n < 4 ? std::max(closed, numeric) <= 1e-6 : std::min(closed, numeric) > 1e-3;
        o.require(ok, "n=" + std::to_string(n) + " (1-F)/d^2=" + fmt("%.3g", closed));
    }
    return o;
}

// 10. determinism
Outcome determinism() {
    auto csv = [](const Table& t) {
        std::ostringstream os;
        write_csv(t, os);
        return os.str();
    };
    Outcome o;
    SweepGrid lyap;
    lyap.task = SweepTask::ClassicalLyapunov;
    lyap.kappa_count = 6;
    lyap.samples = 40;
    lyap.iterations = 2000;
    lyap.seed = 77;
    SweepGrid echo;
    echo.task = SweepTask::EchoAvg;
    echo.j2 = {3, 8, 16};
    echo.kappa_count = 8;
    echo.n_min = 0;
    echo.n_max = 30;
    echo.delta = {0.01, 0.1};
    for (const SweepGrid& g : {lyap, echo}) {
        const std::string a = csv(run_sweep(g, 1));
        const bool repeat = a == csv(run_sweep(g, 1));
        const bool workers = a == csv(run_sweep(g, 4)) && a == csv(run_sweep_serial(g));
        o.require(repeat && workers, std::string(to_string(g.task)) + " byte-identical across runs and 1/4 workers");
    }
    const double a = lyapunov(2.0, 1000, 100, 5), b = lyapunov(2.0, 1000, 100, 5);
    o.require(std::memcmp(&a, &b, sizeof a) == 0, "seeded Lyapunov bit-identical");
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {"exact OTOC values", exact_values},       {"closed form vs numeric", oracle_equivalence},
        {"Pell, unitarity, parity", structural},   {"small-kappa0 expansion", small_kappa},
        {"quantum Lyapunov", quantum_lyapunov_values}, {"Gauss-sum rotations", gauss_sums},
        {"classical map", classical},             {"echo regimes", echo_regimes},
        {"state-fidelity expansion", fidelity_expansion}, {"determinism", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const Outcome o = criteria[i].run();
        all = all && o.pass;
        std::printf("criterion %2zu %-26s %s  %s\n", i + 1, criteria[i].name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
