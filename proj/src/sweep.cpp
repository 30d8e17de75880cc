#include "kicked_top/sweep.hpp"

#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <sstream>

#include <omp.h>

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/classical.hpp"
#include "kicked_top/echo.hpp"
#include "kicked_top/error.hpp"
#include "kicked_top/gauss.hpp"
#include "kicked_top/otoc.hpp"

namespace kicked_top {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::pair<const char*, SweepTask> kTaskNames[] = {
    {"otoc", SweepTask::Otoc},
    {"echo-avg", SweepTask::EchoAvg},
    {"echo-state", SweepTask::EchoState},
    {"classical-lyapunov", SweepTask::ClassicalLyapunov},
    {"portrait", SweepTask::Portrait},
    {"gauss", SweepTask::Gauss},
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

/// Accepts plain numbers and multiples of pi: "pi", "1.5pi", "3*pi/2", "2pi".
double parse_real(const std::string& key, const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c != ' ' && c != '*') t += c;
    }
    double factor = 1.0;
    if (const auto p = t.find("pi"); p != std::string::npos) {
        factor = kPi;
        std::string coef = t.substr(0, p);
        std::string rest = t.substr(p + 2);
        if (coef == "-") coef = "-1";
        if (!rest.empty()) {
            if (rest[0] != '/') throw Error(ErrorKind::InvalidAxis, key + ": cannot parse '" + text + "'");
            factor /= parse_real(key, rest.substr(1));
        }
        t = coef.empty() ? "1" : coef;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.size() || t.empty()) {
        throw Error(ErrorKind::InvalidAxis, key + ": cannot parse '" + text + "' as a number");
    }
    return v * factor;
}

long long parse_integer(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw Error(ErrorKind::InvalidAxis, key + ": cannot parse '" + text + "' as an integer");
    }
    return v;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& text, F parse) {
    std::vector<T> out;
    for (const auto& item : split_list(text)) out.push_back(static_cast<T>(parse(key, item)));
    if (out.empty()) throw Error(ErrorKind::InvalidAxis, key + ": empty list");
    return out;
}

bool quarter_kick(const SweepGrid& grid) { return std::abs(grid.kick - kPi / 2) < 1e-15; }

bool is_classical(SweepTask task) {
    return task == SweepTask::ClassicalLyapunov || task == SweepTask::Portrait;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

/// One independently evaluable chunk of the grid; its rows are contiguous in the output.
struct Unit {
    int j2 = 0;
    double kappa = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    long long r = 0;
    long long s = 1;
};

std::vector<std::string> columns_for(SweepTask task) {
    switch (task) {
    case SweepTask::Otoc:
        return {"j2", "kappa0", "n", "c_inf", "c2", "c4", "closed_form", "abs_diff", "provenance"};
    case SweepTask::EchoAvg:
        return {"j2", "kappa0", "delta", "n", "fidelity", "closed_form", "abs_diff", "provenance"};
    case SweepTask::EchoState:
        return {"j2",       "kappa0",      "delta",    "theta0",    "phi0",
                "n",        "fidelity",    "closed_form", "abs_diff", "provenance"};
    case SweepTask::ClassicalLyapunov:
        return {"kappa0", "samples", "iterations", "seed", "lyapunov"};
    case SweepTask::Portrait:
        return {"kappa0", "theta0", "phi0", "step", "theta", "phi"};
    case SweepTask::Gauss:
        return {"j2", "r", "s", "l", "coeff_re", "coeff_im", "coeff_abs", "reconstruction_error", "period"};
    }
    return {};
}

std::vector<Unit> units_for(const SweepGrid& grid) {
    std::vector<Unit> units;
    switch (grid.task) {
    case SweepTask::Otoc:
        for (int j2 : grid.j2)
            for (double k : kappa_values(grid, j2)) units.push_back({j2, k});
        break;
    case SweepTask::EchoAvg:
        for (int j2 : grid.j2)
            for (double k : kappa_values(grid, j2))
                for (double d : grid.delta) units.push_back({j2, k, d});
        break;
    case SweepTask::EchoState:
        for (int j2 : grid.j2)
            for (double k : kappa_values(grid, j2))
                for (double d : grid.delta)
                    for (double t : grid.theta0)
                        for (double p : grid.phi0) units.push_back({j2, k, d, t, p});
        break;
    case SweepTask::ClassicalLyapunov:
        for (double k : kappa_values(grid, 0)) units.push_back({0, k});
        break;
    case SweepTask::Portrait:
        for (double k : kappa_values(grid, 0))
            for (double t : grid.theta0)
                for (double p : grid.phi0) units.push_back({0, k, 0.0, t, p});
        break;
    case SweepTask::Gauss:
        for (int j2 : grid.j2)
            for (long long r : grid.r)
                for (long long s : grid.s) units.push_back({j2, 0.0, 0.0, 0.0, 0.0, r, s});
        break;
    }
    return units;
}

std::size_t rows_per_unit(const SweepGrid& grid, const Unit& u) {
    const long long steps = static_cast<long long>(grid.n_max) - grid.n_min + 1;
    switch (grid.task) {
    case SweepTask::Otoc:
    case SweepTask::EchoAvg:
    case SweepTask::EchoState: return steps > 0 ? static_cast<std::size_t>(steps) : 0;
    case SweepTask::ClassicalLyapunov: return 1;
    case SweepTask::Portrait: return grid.n_max >= 1 ? static_cast<std::size_t>(grid.n_max) + 1 : 0;
    case SweepTask::Gauss: return static_cast<std::size_t>(2 * u.s);
    }
    return 0;
}

using Rows = std::vector<std::vector<Cell>>;

void push_comparison(std::vector<Cell>& row, double numeric, double closed) {
    if (std::isnan(closed)) {
        row.insert(row.end(), {kNaN, kNaN, std::string("numeric")});
    } else {
        row.insert(row.end(), {closed, std::abs(closed - numeric), std::string("both")});
    }
}

Rows evaluate(const SweepGrid& grid, const Unit& u) {
    Rows rows;
    const bool closed_ok = quarter_kick(grid);
    const SpinParams params{u.j2, u.kappa, grid.kick};
    switch (grid.task) {
    case SweepTask::Otoc: {
        if (grid.n_max < grid.n_min) break;
        const auto series = otoc_infinite(params, grid.n_max);
        for (const auto& p : series.values) {
            if (p.n < grid.n_min) continue;
            double closed = kNaN;
            if (closed_ok && u.j2 == 3) closed = chebyshev::three_qubit_otoc(p.n, u.kappa);
            if (closed_ok && u.j2 == 4) closed = chebyshev::four_qubit_otoc(p.n, u.kappa);
            std::vector<Cell> row{std::int64_t{u.j2}, u.kappa, std::int64_t{p.n}, p.c_inf, p.c2, p.c4};
            push_comparison(row, p.c_inf, closed);
            rows.push_back(std::move(row));
        }
        break;
    }
    case SweepTask::EchoAvg: {
        if (grid.n_max < grid.n_min) break;
        const auto series = average_fidelity_series(params, u.delta, grid.n_max);
        for (const auto& p : series.values) {
            if (p.n < grid.n_min) continue;
            double closed = kNaN;
            if (closed_ok && u.j2 == 3) closed = chebyshev::three_qubit_avg_echo(p.n, u.kappa, u.delta);
            if (closed_ok && u.j2 == 4) closed = chebyshev::four_qubit_avg_echo(p.n, u.kappa, u.delta);
            std::vector<Cell> row{std::int64_t{u.j2}, u.kappa, u.delta, std::int64_t{p.n}, p.fidelity};
            push_comparison(row, p.fidelity, closed);
            rows.push_back(std::move(row));
        }
        break;
    }
    case SweepTask::EchoState: {
        if (grid.n_max < grid.n_min) break;
        const StateVector psi0 = coherent_state(params, u.theta, u.phi);
        const auto series = state_fidelity_series(params, u.delta, grid.n_max, psi0);
        const bool north = near(u.theta, 0.0) && near(u.phi, 0.0);
        const bool fixed = near(u.theta, kPi / 2) && near(u.phi, -kPi / 2);
        for (const auto& p : series.values) {
            if (p.n < grid.n_min) continue;
            double closed = kNaN;
            if (closed_ok && u.j2 == 3 && north) closed = chebyshev::state_fidelity_000(p.n, u.kappa, u.delta);
            if (closed_ok && u.j2 == 3 && fixed) closed = chebyshev::state_fidelity_ppp(p.n, u.kappa, u.delta);
            std::vector<Cell> row{std::int64_t{u.j2}, u.kappa, u.delta, u.theta, u.phi,
                                  std::int64_t{p.n}, p.fidelity};
            push_comparison(row, p.fidelity, closed);
            rows.push_back(std::move(row));
        }
        break;
    }
    case SweepTask::ClassicalLyapunov: {
        // the serial estimator: parallelism lives at the grid level here
        const double lambda = lyapunov_serial(u.kappa, grid.iterations, grid.samples, grid.seed);
        rows.push_back({u.kappa, std::int64_t{grid.samples}, std::int64_t{grid.iterations},
                        std::to_string(grid.seed), lambda});
        break;
    }
    case SweepTask::Portrait: {
        if (grid.n_max < 1) break;
        const auto orbit = trajectory(ClassicalState::from_angles(u.theta, u.phi), u.kappa, grid.n_max);
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            rows.push_back({u.kappa, u.theta, u.phi, static_cast<std::int64_t>(k), orbit[k].theta(),
                            orbit[k].phi()});
        }
        break;
    }
    case SweepTask::Gauss: {
        const auto dec = decompose_torsion(u.j2, u.r, u.s);
        const auto period = verify_periodicity(u.j2, u.r, u.s, grid.iterations);
        for (std::size_t l = 0; l < dec.coeffs.size(); ++l) {
            const Complex a = dec.coeffs[l];
            rows.push_back({std::int64_t{u.j2}, std::int64_t{u.r}, std::int64_t{u.s},
                            static_cast<std::int64_t>(l), a.real(), a.imag(), std::abs(a),
                            dec.reconstruction_error, std::int64_t{period ? *period : -1}});
        }
        break;
    }
    }
    return rows;
}

Table empty_table(const SweepGrid& grid) {
    Table t;
    t.columns = columns_for(grid.task);
    t.metadata.emplace_back("task", to_string(grid.task));
    t.metadata.emplace_back("kick_angle", format_cell(grid.kick));
    if (grid.task == SweepTask::ClassicalLyapunov) t.metadata.emplace_back("seed", std::to_string(grid.seed));
    return t;
}

std::vector<Unit> prepare(const SweepGrid& grid) {
    validate(grid);
    const auto n = grid_size(grid);
    if (n > grid.cap) {
        throw Error(ErrorKind::CapExceeded, "grid has " + std::to_string(n) + " points, cap is " +
                                                std::to_string(grid.cap));
    }
    return units_for(grid);
}

Table assemble(const SweepGrid& grid, std::vector<Rows>& parts) {
    Table t = empty_table(grid);
    for (auto& part : parts)
        for (auto& row : part) t.add_row(std::move(row));
    return t;
}

} // namespace

SweepTask parse_task(const std::string& name) {
    for (const auto& [text, task] : kTaskNames) {
        if (name == text) return task;
    }
    throw Error(ErrorKind::InvalidAxis, "unknown task '" + name + "'");
}

const char* to_string(SweepTask task) {
    for (const auto& [text, t] : kTaskNames) {
        if (t == task) return text;
    }
    return "?";
}

void apply_setting(SweepGrid& grid, const std::string& key, const std::string& value) {
    auto real = [](const std::string& k, const std::string& v) { return parse_real(k, v); };
    auto integer = [](const std::string& k, const std::string& v) { return parse_integer(k, v); };
    auto single_int = [&](const std::string& v) { return static_cast<int>(parse_integer(key, v)); };
    if (key == "task") {
        grid.task = parse_task(value);
    } else if (key == "j2") {
        grid.j2 = parse_list<int>(key, value, integer);
    } else if (key == "kappa0") {
        grid.kappa_min = grid.kappa_max = parse_real(key, value);
        grid.kappa_count = 1;
    } else if (key == "kappa0_min") {
        grid.kappa_min = parse_real(key, value);
    } else if (key == "kappa0_max") {
        grid.kappa_max = parse_real(key, value);
    } else if (key == "kappa0_count") {
        grid.kappa_count = single_int(value);
    } else if (key == "n_min") {
        grid.n_min = single_int(value);
    } else if (key == "n_max" || key == "steps") {
        grid.n_max = single_int(value);
    } else if (key == "delta") {
        grid.delta = parse_list<double>(key, value, real);
    } else if (key == "theta0") {
        grid.theta0 = parse_list<double>(key, value, real);
    } else if (key == "phi0") {
        grid.phi0 = parse_list<double>(key, value, real);
    } else if (key == "r") {
        grid.r = parse_list<long long>(key, value, integer);
    } else if (key == "s") {
        grid.s = parse_list<long long>(key, value, integer);
    } else if (key == "kick_angle") {
        grid.kick = parse_real(key, value);
    } else if (key == "seed") {
        grid.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "samples") {
        grid.samples = single_int(value);
    } else if (key == "iterations") {
        grid.iterations = single_int(value);
    } else if (key == "cap") {
        grid.cap = static_cast<std::size_t>(parse_integer(key, value));
    } else {
        throw Error(ErrorKind::InvalidAxis, "unknown sweep key '" + key + "'");
    }
}

void read_config(SweepGrid& grid, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidAxis, "config line " + std::to_string(lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        apply_setting(grid, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void validate(const SweepGrid& grid) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidAxis, msg); };
    if (!is_classical(grid.task)) {
        if (grid.j2.empty()) fail("j2 axis is empty");
        for (int j2 : grid.j2) {
            if (j2 < 1) fail("j2 values must be >= 1, got " + std::to_string(j2));
        }
    }
    if (grid.kappa_count < 1) fail("kappa0_count must be >= 1");
    if (grid.kappa_min && grid.kappa_max && *grid.kappa_max < *grid.kappa_min) fail("kappa0_max < kappa0_min");
    if (grid.task == SweepTask::Otoc && grid.n_min < 1) fail("otoc needs n_min >= 1");
    if (grid.n_min < 0) fail("n_min must be >= 0");
    if (grid.delta.empty()) fail("delta axis is empty");
    if (grid.theta0.empty() || grid.phi0.empty()) fail("theta0/phi0 axes are empty");
    if (grid.r.empty() || grid.s.empty()) fail("r/s axes are empty");
    if (grid.samples < 1) fail("samples must be >= 1");
    if (grid.iterations < 1) fail("iterations must be >= 1");
}

std::vector<double> kappa_values(const SweepGrid& grid, int j2) {
    const double default_max = is_classical(grid.task) ? 2.0 * kPi : kPi * 0.5 * j2;
    const double lo = grid.kappa_min.value_or(0.0);
    const double hi = grid.kappa_max.value_or(default_max);
    std::vector<double> out(grid.kappa_count);
    for (int i = 0; i < grid.kappa_count; ++i) {
        out[i] = grid.kappa_count == 1 ? lo : lo + (hi - lo) * i / (grid.kappa_count - 1);
    }
    return out;
}

std::size_t grid_size(const SweepGrid& grid) {
    std::size_t total = 0;
    for (const auto& u : units_for(grid)) total += rows_per_unit(grid, u);
    return total;
}

Table run_sweep_serial(const SweepGrid& grid) {
    const auto units = prepare(grid);
    std::vector<Rows> parts;
    parts.reserve(units.size());
    for (const auto& u : units) parts.push_back(evaluate(grid, u));
    return assemble(grid, parts);
}

Table run_sweep(const SweepGrid& grid, int workers) {
    const auto units = prepare(grid);
    const int count = static_cast<int>(units.size());
    std::vector<Rows> parts(count);
    std::vector<std::exception_ptr> errors(count);
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int i = 0; i < count; ++i) {
        try {
            parts[i] = evaluate(grid, units[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return assemble(grid, parts);
}

} // namespace kicked_top
