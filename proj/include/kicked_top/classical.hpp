#pragma once

#include <cstdint>
#include <vector>

namespace kicked_top {

/// Point (X, Y, Z) = J/j on the unit sphere.
struct ClassicalState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    static ClassicalState from_angles(double theta, double phi);
    double theta() const;
    double phi() const; // atan2(Y, X), in (-pi, pi]
    double norm() const;
};

/// One kick: Z' = -X, then a torsion rotation about the new Z axis by kappa0 X.
/// The result is renormalised onto the sphere.
ClassicalState map_step(const ClassicalState& s, double kappa0);

/// s0 followed by n iterates (n + 1 states).
std::vector<ClassicalState> trajectory(const ClassicalState& s0, double kappa0, int n);

struct PortraitPoint {
    int orbit = 0;
    int step = 0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Iterates every initial state n times; rows ordered by (orbit, step).
std::vector<PortraitPoint> phase_portrait(double kappa0, const std::vector<ClassicalState>& initials,
                                          int n);

/// Largest Lyapunov exponent averaged over n_samples area-uniform initial
/// states. Benettin pairs with separation 1e-8 renormalised every kick.
/// Each sample draws from its own generator seeded from `seed`, so the result
/// does not depend on the number of threads.
double lyapunov(double kappa0, int n_iters, int n_samples, std::uint64_t seed);

/// Single-threaded reference for lyapunov(); bit-identical output.
double lyapunov_serial(double kappa0, int n_iters, int n_samples, std::uint64_t seed);

/// Exponent of one orbit; `tangent` is the initial separation direction.
double lyapunov_orbit(const ClassicalState& s0, const ClassicalState& tangent, double kappa0,
                      int n_iters);

} // namespace kicked_top
