#pragma once

#include <optional>
#include <vector>

#include "kicked_top/spin.hpp"

namespace kicked_top {

/// a_l(r,s) = (1/2s) sum_{q=0}^{2s-1} e^{-i pi q l / s} e^{-i pi r q^2 / s}.
/// Any integer l is accepted (the coefficients have period 2s in l).
/// Requires s >= 1, r >= 0, gcd(r, s) = 1.
Complex gauss_coeff(long long l, long long r, long long s);

/// exp(-i pi r Jz^2 / s) written as sum_l a_l exp(-i pi l Jz / s), l = 0..2s-1.
struct GaussDecomposition {
    int j2 = 0;
    long long r = 0;
    long long s = 1;
    std::vector<Complex> coeffs;
    double reconstruction_error = 0.0; // max entrywise deviation from the torsion
    int nonzero = 0;                   // coefficients with |a_l| > 1e-12
};

/// Integer spin only; odd j2 throws UnsupportedSpin.
GaussDecomposition decompose_torsion(int j2, long long r, long long s);

/// diag(exp(-i pi r m^2 / s)) exp(-i pi Jy / 2), i.e. the Floquet operator at
/// kappa0 = pi j2 r / s with a quarter-turn kick.
ComplexMatrix rational_floquet(int j2, long long r, long long s);

/// Smallest n <= max_power with U^n equal to a phase times I (to 1e-10).
std::optional<int> verify_periodicity(int j2, long long r, long long s, int max_power);

} // namespace kicked_top
