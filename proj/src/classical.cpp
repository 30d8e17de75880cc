#include "kicked_top/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kicked_top/error.hpp"

namespace kicked_top {

namespace {

constexpr double kSeparation = 1e-8;

ClassicalState normalized(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    return {x / r, y / r, z / r};
}

struct Sample {
    ClassicalState start;
    ClassicalState tangent;
};

std::vector<std::uint64_t> sample_seeds(int n_samples, std::uint64_t seed) {
    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> seeds(n_samples);
    for (auto& s : seeds) s = master();
    return seeds;
}

Sample draw_sample(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double z = unit(rng);
    const double phi = angle(rng);
    const double rho = std::sqrt(1.0 - z * z);
    Sample s;
    s.start = {rho * std::cos(phi), rho * std::sin(phi), z};
    // random direction in the tangent plane: e_theta cos(a) + e_phi sin(a)
    const double a = angle(rng);
    const ClassicalState e_theta{z * std::cos(phi), z * std::sin(phi), -rho};
    const ClassicalState e_phi{-std::sin(phi), std::cos(phi), 0.0};
    s.tangent = {e_theta.x * std::cos(a) + e_phi.x * std::sin(a),
                 e_theta.y * std::cos(a) + e_phi.y * std::sin(a),
                 e_theta.z * std::cos(a) + e_phi.z * std::sin(a)};
    return s;
}

void check_lyapunov_args(int n_iters, int n_samples) {
    if (n_iters < 1) throw Error(ErrorKind::InvalidParameter, "n_iters must be >= 1");
    if (n_samples < 1) throw Error(ErrorKind::InvalidParameter, "n_samples must be >= 1");
}

} // namespace

ClassicalState ClassicalState::from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double ClassicalState::theta() const { return std::acos(std::clamp(z, -1.0, 1.0)); }
double ClassicalState::phi() const { return std::atan2(y, x); }
double ClassicalState::norm() const { return std::sqrt(x * x + y * y + z * z); }

ClassicalState map_step(const ClassicalState& s, double kappa0) {
    const double c = std::cos(kappa0 * s.x);
    const double sn = std::sin(kappa0 * s.x);
    return normalized(s.z * c + s.y * sn, -s.z * sn + s.y * c, -s.x);
}

std::vector<ClassicalState> trajectory(const ClassicalState& s0, double kappa0, int n) {
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "trajectory length must be >= 0");
    std::vector<ClassicalState> out;
    out.reserve(n + 1);
    out.push_back(s0);
    for (int i = 0; i < n; ++i) out.push_back(map_step(out.back(), kappa0));
    return out;
}

std::vector<PortraitPoint> phase_portrait(double kappa0, const std::vector<ClassicalState>& initials,
                                          int n) {
    if (n < 1) throw Error(ErrorKind::InvalidParameter, "portrait needs n >= 1");
    std::vector<PortraitPoint> out;
    out.reserve(initials.size() * (n + 1));
    for (std::size_t o = 0; o < initials.size(); ++o) {
        const auto orbit = trajectory(initials[o], kappa0, n);
        for (int k = 0; k <= n; ++k) {
            out.push_back({static_cast<int>(o), k, orbit[k].theta(), orbit[k].phi()});
        }
    }
    return out;
}

double lyapunov_orbit(const ClassicalState& s0, const ClassicalState& tangent, double kappa0,
                      int n_iters) {
    ClassicalState a = s0;
    ClassicalState b = normalized(a.x + kSeparation * tangent.x, a.y + kSeparation * tangent.y,
                                  a.z + kSeparation * tangent.z);
    double sum = 0.0;
    for (int i = 0; i < n_iters; ++i) {
        a = map_step(a, kappa0);
        b = map_step(b, kappa0);
        const double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        sum += std::log(dist / kSeparation);
        const double scale = kSeparation / dist;
        b = normalized(a.x + scale * dx, a.y + scale * dy, a.z + scale * dz);
    }
    return sum / n_iters;
}

double lyapunov_serial(double kappa0, int n_iters, int n_samples, std::uint64_t seed) {
    check_lyapunov_args(n_iters, n_samples);
    const auto seeds = sample_seeds(n_samples, seed);
    double total = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Sample s = draw_sample(seeds[i]);
        total += lyapunov_orbit(s.start, s.tangent, kappa0, n_iters);
    }
    return total / n_samples;
}

double lyapunov(double kappa0, int n_iters, int n_samples, std::uint64_t seed) {
    check_lyapunov_args(n_iters, n_samples);
    const auto seeds = sample_seeds(n_samples, seed);
    std::vector<double> per_sample(n_samples);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n_samples; ++i) {
        const Sample s = draw_sample(seeds[i]);
        per_sample[i] = lyapunov_orbit(s.start, s.tangent, kappa0, n_iters);
    }
    // summed in sample order so the result matches the serial reference bit for bit
    double total = 0.0;
    for (double v : per_sample) total += v;
    return total / n_samples;
}

} // namespace kicked_top
