// kicked-top: command-line front end for the kicked-top toolkit.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "kicked_top/classical.hpp"
#include "kicked_top/error.hpp"
#include "kicked_top/sweep.hpp"
#include "kicked_top/table.hpp"

using namespace kicked_top;

namespace {

struct Options {
    std::map<std::string, std::string> settings; // sweep keys set on the command line
    std::optional<std::string> config;
    std::string format = "csv";
    std::string out = "-";
    int workers = 0;
};

/// Flags shared by the grid-backed subcommands; each maps onto a sweep key.
void add_grid_flags(CLI::App* cmd, Options& o, const std::vector<std::pair<std::string, std::string>>& flags) {
    for (const auto& [flag, key] : flags) {
        cmd->add_option_function<std::string>(
            "--" + flag, [&o, key = key](const std::string& v) { o.settings[key] = v; },
            "sweep key '" + key + "' (lists are comma-separated; 'pi' multiples accepted)");
    }
}

void add_output_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", o.format, "csv, json or dat")->check(CLI::IsMember({"csv", "json", "dat"}));
    cmd->add_option("--out", o.out, "output file ('-' for stdout)");
}

SweepGrid build_grid(SweepTask task, const Options& o) {
    SweepGrid grid;
    grid.task = task;
    if (o.config) {
        std::ifstream in(*o.config);
        if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + *o.config + "'");
        read_config(grid, in);
    }
    for (const auto& [key, value] : o.settings) apply_setting(grid, key, value);
    return grid;
}

void emit(const Table& table, const Options& o) { export_table(table, parse_format(o.format), o.out); }

const std::vector<std::pair<std::string, std::string>> kSpinFlags{
    {"j2", "j2"}, {"kappa0", "kappa0"}, {"kick-angle", "kick_angle"}, {"steps", "n_max"}, {"n-min", "n_min"}};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum and classical kicked top: OTOCs, Loschmidt echoes, Lyapunov exponents"};
    app.require_subcommand(1);

    Options otoc_o, echo_o, state_o, classical_o, portrait_o, gauss_o, sweep_o, figure_o;

    auto* otoc = app.add_subcommand("otoc", "infinite-temperature OTOC of Jz");
    add_grid_flags(otoc, otoc_o, kSpinFlags);
    add_output_flags(otoc, otoc_o);

    auto* echo = app.add_subcommand("echo", "Haar-averaged Loschmidt echo");
    add_grid_flags(echo, echo_o, kSpinFlags);
    add_grid_flags(echo, echo_o, {{"delta", "delta"}});
    add_output_flags(echo, echo_o);

    auto* state = app.add_subcommand("echo-state", "Loschmidt echo of a spin coherent state");
    add_grid_flags(state, state_o, kSpinFlags);
    add_grid_flags(state, state_o, {{"delta", "delta"}, {"theta0", "theta0"}, {"phi0", "phi0"}});
    add_output_flags(state, state_o);

    std::string lyap_kappa = "2pi";
    int lyap_steps = 10000, lyap_samples = 1000;
    std::uint64_t lyap_seed = 1;
    auto* classical = app.add_subcommand("classical", "Lyapunov exponent of the classical map");
    classical->add_option("--kappa0", lyap_kappa, "chaoticity ('pi' multiples accepted)");
    classical->add_option("--steps", lyap_steps, "iterations per orbit")->check(CLI::PositiveNumber);
    classical->add_option("--samples", lyap_samples, "initial states")->check(CLI::PositiveNumber);
    classical->add_option("--seed", lyap_seed, "random seed");
    add_output_flags(classical, classical_o);

    auto* portrait = app.add_subcommand("portrait", "classical orbits as (theta, phi) points");
    add_grid_flags(portrait, portrait_o, {{"kappa0", "kappa0"}, {"steps", "n_max"}, {"theta0", "theta0"}, {"phi0", "phi0"}});
    add_output_flags(portrait, portrait_o);

    auto* gauss = app.add_subcommand("gauss", "rotation decomposition of a rational torsion");
    add_grid_flags(gauss, gauss_o, {{"j2", "j2"}, {"r", "r"}, {"s", "s"}, {"max-power", "iterations"}});
    add_output_flags(gauss, gauss_o);

    auto* sweep = app.add_subcommand("sweep", "parameter grid from a config file and/or flags");
    sweep->add_option_function<std::string>("--config", [&](const std::string& v) { sweep_o.config = v; },
                                            "key = value file; flags override it");
    add_grid_flags(sweep, sweep_o,
                   {{"task", "task"}, {"j2", "j2"}, {"kappa0", "kappa0"}, {"kappa0-min", "kappa0_min"},
                    {"kappa0-max", "kappa0_max"}, {"kappa0-count", "kappa0_count"}, {"kick-angle", "kick_angle"},
                    {"steps", "n_max"}, {"n-min", "n_min"}, {"delta", "delta"}, {"theta0", "theta0"},
                    {"phi0", "phi0"}, {"r", "r"}, {"s", "s"}, {"seed", "seed"}, {"samples", "samples"},
                    {"iterations", "iterations"}, {"cap", "cap"}});
    add_output_flags(sweep, sweep_o);

    std::string figure_id;
    figure_o.out = ".";
    auto* figure = app.add_subcommand("figure", "write the data behind a figure ('all' for every one)");
    figure->add_option("id", figure_id, "fig1..fig8, le3..le7, le000, leppp, all")->required();
    figure->add_option("--workers", figure_o.workers, "worker threads (0 = all cores)");
    figure->add_option("--format", figure_o.format, "csv, json or dat")->check(CLI::IsMember({"csv", "json", "dat"}));
    figure->add_option("--out", figure_o.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*otoc) emit(run_sweep(build_grid(SweepTask::Otoc, otoc_o), otoc_o.workers), otoc_o);
        if (*echo) {
            auto grid = build_grid(SweepTask::EchoAvg, echo_o);
            if (!echo_o.settings.count("n_min")) grid.n_min = 0;
            emit(run_sweep(grid, echo_o.workers), echo_o);
        }
        if (*state) {
            auto grid = build_grid(SweepTask::EchoState, state_o);
            if (!state_o.settings.count("n_min")) grid.n_min = 0;
            emit(run_sweep(grid, state_o.workers), state_o);
        }
        if (*classical) {
            if (classical_o.workers > 0) omp_set_num_threads(classical_o.workers);
            SweepGrid parsed;
            apply_setting(parsed, "kappa0", lyap_kappa);
            const double kappa = *parsed.kappa_min;
            Table t;
            t.columns = {"kappa0", "samples", "iterations", "seed", "lyapunov"};
            t.metadata.emplace_back("task", "classical-lyapunov");
            t.add_row({kappa, std::int64_t{lyap_samples}, std::int64_t{lyap_steps}, std::to_string(lyap_seed),
                       lyapunov(kappa, lyap_steps, lyap_samples, lyap_seed)});
            emit(t, classical_o);
        }
        if (*portrait) emit(run_sweep(build_grid(SweepTask::Portrait, portrait_o), portrait_o.workers), portrait_o);
        if (*gauss) emit(run_sweep(build_grid(SweepTask::Gauss, gauss_o), gauss_o.workers), gauss_o);
        if (*sweep) {
            if (!sweep_o.config && sweep_o.settings.empty()) {
                throw Error(ErrorKind::InvalidAxis, "sweep needs --config or grid flags");
            }
            const SweepTask task = sweep_o.settings.count("task") ? parse_task(sweep_o.settings["task"]) : SweepTask::Otoc;
            emit(run_sweep(build_grid(task, sweep_o), sweep_o.workers), sweep_o);
        }
        if (*figure) {
            const Format format = parse_format(figure_o.format);
            const char* ext = format == Format::Csv ? ".csv" : format == Format::Json ? ".json" : ".dat";
            std::vector<std::string> ids{figure_id};
            if (figure_id == "all") ids = figure_ids();
            std::filesystem::create_directories(figure_o.out);
            for (const auto& id : ids) {
                for (const auto& data : plotdata(id, figure_o.workers)) {
                    const auto path = (std::filesystem::path(figure_o.out) / (data.name + ext)).string();
                    export_table(data.table, format, path, data.group_column);
                    std::fprintf(stderr, "wrote %s (%zu rows)\n", path.c_str(), data.table.rows.size());
                }
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "kicked-top: %s\n", e.what());
        return 1;
    }
    return 0;
}
