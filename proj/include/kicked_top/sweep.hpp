#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "kicked_top/table.hpp"

namespace kicked_top {

enum class SweepTask { Otoc, EchoAvg, EchoState, ClassicalLyapunov, Portrait, Gauss };

SweepTask parse_task(const std::string& name);
const char* to_string(SweepTask task);

/// Cartesian parameter grid. Unset kappa bounds default to [0, pi j] per spin
/// (and [0, 2 pi] for the classical tasks).
struct SweepGrid {
    SweepTask task = SweepTask::Otoc;
    std::vector<int> j2{3};
    std::optional<double> kappa_min;
    std::optional<double> kappa_max;
    int kappa_count = 50;
    int n_min = 1;
    int n_max = 10;
    std::vector<double> delta{0.01};
    std::vector<double> theta0{0.0};
    std::vector<double> phi0{0.0};
    std::vector<long long> r{1};
    std::vector<long long> s{2};
    double kick = std::numbers::pi / 2;
    std::uint64_t seed = 1;
    int samples = 100;
    int iterations = 1000;
    std::size_t cap = 1'000'000;
};

/// Sets one field from its text form; list keys take comma-separated values.
/// Keys: task j2 kappa0 kappa0_min kappa0_max kappa0_count n_min n_max steps
/// delta theta0 phi0 r s kick_angle seed samples iterations cap.
void apply_setting(SweepGrid& grid, const std::string& key, const std::string& value);

/// "key = value" lines; '#' starts a comment.
void read_config(SweepGrid& grid, std::istream& in);

/// Throws InvalidAxis for malformed axes.
void validate(const SweepGrid& grid);

std::vector<double> kappa_values(const SweepGrid& grid, int j2);

/// Number of rows the grid produces.
std::size_t grid_size(const SweepGrid& grid);

/// Evaluates the grid on `workers` threads (0 = OpenMP default). Rows come out
/// in grid order whatever the thread count. Throws CapExceeded when
/// grid_size(grid) > grid.cap.
Table run_sweep(const SweepGrid& grid, int workers = 0);

/// Single-threaded reference for run_sweep.
Table run_sweep_serial(const SweepGrid& grid);

struct FigureData {
    std::string name; // file stem
    Table table;
    std::optional<std::string> group_column;
};

/// Data behind a figure: fig1..fig8, le3..le7, le000, leppp.
std::vector<FigureData> plotdata(const std::string& figure_id, int workers = 0);
const std::vector<std::string>& figure_ids();

} // namespace kicked_top
