#include <cmath>

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/error.hpp"
#include "kicked_top/sweep.hpp"

namespace kicked_top {

namespace {

constexpr double kPi = std::numbers::pi;

SweepGrid otoc_grid(std::vector<int> j2, double kappa_lo, double kappa_hi, int kappa_count, int n_max) {
    SweepGrid g;
    g.task = SweepTask::Otoc;
    g.j2 = std::move(j2);
    g.kappa_min = kappa_lo;
    g.kappa_max = kappa_hi;
    g.kappa_count = kappa_count;
    g.n_min = 1;
    g.n_max = n_max;
    return g;
}

/// One sweep per listed kappa0, concatenated (kappa lists are not ranges).
Table otoc_at(const std::vector<int>& j2, const std::vector<double>& kappas, int n_max, int workers) {
    Table out;
    for (double k : kappas) {
        Table t = run_sweep(otoc_grid(j2, k, k, 1, n_max), workers);
        if (out.columns.empty()) {
            out.columns = t.columns;
            out.metadata = t.metadata;
        }
        for (auto& row : t.rows) out.add_row(std::move(row));
    }
    return out;
}

void add_log_column(Table& t, const std::string& source, const std::string& name) {
    const auto col = t.column(source);
    t.columns.push_back(name);
    for (auto& row : t.rows) row.push_back(std::log(std::get<double>(row[col])));
}

Table echo_avg(const std::vector<int>& j2, double kappa0, const std::vector<double>& deltas, int n_max,
               int workers) {
    SweepGrid g;
    g.task = SweepTask::EchoAvg;
    g.j2 = j2;
    g.kappa_min = g.kappa_max = kappa0;
    g.kappa_count = 1;
    g.delta = deltas;
    g.n_min = 0;
    g.n_max = n_max;
    return run_sweep(g, workers);
}

Table echo_state_map(double theta0, double phi0, int workers) {
    SweepGrid g;
    g.task = SweepTask::EchoState;
    g.j2 = {3};
    g.kappa_min = 0.0;
    g.kappa_max = 1.5 * kPi;
    g.kappa_count = 61;
    g.delta = {0.005};
    g.theta0 = {theta0};
    g.phi0 = {phi0};
    g.n_min = 0;
    g.n_max = 40;
    return run_sweep(g, workers);
}

Table portrait(int workers) {
    SweepGrid g;
    g.task = SweepTask::Portrait;
    g.n_max = 300;
    g.theta0.clear();
    g.phi0.clear();
    for (int i = 1; i <= 7; ++i) g.theta0.push_back(kPi * i / 8);
    for (int i = 0; i < 12; ++i) g.phi0.push_back(-kPi + 2 * kPi * i / 12);
    // marked initial states: the period-4 orbit and the fixed point
    g.theta0.push_back(0.0);
    g.phi0.push_back(-kPi / 2);
    Table out;
    for (double k : {0.5, 2.5, 3.0, 6.0}) {
        g.kappa_min = g.kappa_max = k;
        g.kappa_count = 1;
        Table t = run_sweep(g, workers);
        if (out.columns.empty()) {
            out.columns = t.columns;
            out.metadata = t.metadata;
        }
        for (auto& row : t.rows) out.add_row(std::move(row));
    }
    return out;
}

Table otoc_n2_n3(int workers) {
    // closed forms only: this is a single curve per time in kappa0
    Table t;
    t.columns = {"kappa0", "c_inf_n2", "c_inf_n3", "c_inf_n2_numeric", "c_inf_n3_numeric"};
    Table numeric = run_sweep(otoc_grid({3}, 0.0, 3.0 * kPi, 181, 3), workers);
    for (std::size_t r = 0; r < numeric.rows.size(); r += 3) {
        const double k = numeric.number(r, "kappa0");
        t.add_row({k, chebyshev::three_qubit_otoc(2, k), chebyshev::three_qubit_otoc(3, k),
                   numeric.number(r + 1, "c_inf"), numeric.number(r + 2, "c_inf")});
    }
    return t;
}

Table otoc_density(int workers) {
    Table t = run_sweep(otoc_grid({3}, 0.0, 1.5 * kPi, 101, 40), workers);
    // regroup so gnuplot sees one scan line per time step, even times first
    Table out;
    out.columns = {"parity", "n", "kappa0", "c_inf"};
    for (int parity : {0, 1}) {
        for (int n = 1; n <= 40; ++n) {
            if (n % 2 != parity) continue;
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                if (static_cast<int>(t.number(r, "n")) != n) continue;
                out.add_row({std::string(parity ? "odd" : "even"), std::int64_t{n}, t.number(r, "kappa0"),
                             t.number(r, "c_inf")});
            }
        }
    }
    return out;
}

FigureData fig(const std::string& name, Table t, std::optional<std::string> group) {
    return {name, std::move(t), std::move(group)};
}

} // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig1", "fig2", "fig3", "fig4", "fig5",  "fig6",  "fig7", "fig8",
                                              "le3",  "le4",  "le5",  "le6",  "le7", "le000", "leppp"};
    return ids;
}

std::vector<FigureData> plotdata(const std::string& id, int workers) {
    if (id == "fig1") return {fig("fig1", portrait(workers), "kappa0")};
    if (id == "fig2") return {fig("fig2", otoc_n2_n3(workers), std::nullopt)};
    if (id == "fig3") return {fig("fig3", otoc_density(workers), "n")};
    if (id == "fig4") {
        Table t = otoc_at({3}, {kPi / 4, kPi / 2, kPi, 1.5 * kPi}, 3, workers);
        add_log_column(t, "c_inf", "ln_c_inf");
        return {fig("fig4", std::move(t), "kappa0")};
    }
    if (id == "fig5") {
        Table t = otoc_at({3, 5, 7, 9, 17, 40}, {1.5 * kPi}, 3, workers);
        add_log_column(t, "c_inf", "ln_c_inf");
        return {fig("fig5", std::move(t), "j2")};
    }
    if (id == "fig6") return {fig("fig6", otoc_at({4}, {0.01, 0.05, 0.1, 0.5}, 100, workers), "kappa0")};
    if (id == "fig7") return {fig("fig7", otoc_at({4}, {kPi / 2, kPi, 1.5 * kPi, 2 * kPi}, 50, workers), "kappa0")};
    if (id == "fig8") {
        Table t = otoc_at({4, 8, 16}, {2 * kPi}, 3, workers);
        add_log_column(t, "c_inf", "ln_c_inf");
        return {fig("fig8", std::move(t), "j2")};
    }
    if (id == "le3") return {fig("le3", echo_avg({4, 8, 16}, 2 * kPi, {0.01}, 100, workers), "j2")};
    if (id == "le4") return {fig("le4", echo_avg({4, 8, 16}, 2 * kPi, {0.1}, 100, workers), "j2")};
    if (id == "le5") return {fig("le5", echo_avg({4, 8, 16, 32, 64}, 2 * kPi, {0.1}, 40, workers), "j2")};
    if (id == "le6") return {fig("le6", echo_avg({4, 8, 16, 32, 64}, 2 * kPi, {0.5}, 40, workers), "j2")};
    if (id == "le7") return {fig("le7", echo_avg({128}, 2 * kPi, {0.1, 0.2, 0.3, 0.4, 0.5}, 30, workers), "delta")};
    if (id == "le000") return {fig("le000", echo_state_map(0.0, 0.0, workers), "kappa0")};
    if (id == "leppp") return {fig("leppp", echo_state_map(kPi / 2, -kPi / 2, workers), "kappa0")};
    throw Error(ErrorKind::InvalidParameter, "unknown figure id '" + id + "'");
}

} // namespace kicked_top
