#include "kicked_top/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "kicked_top/error.hpp"

namespace kicked_top {

namespace {

void check_rs(long long r, long long s) {
    if (s < 1 || r < 0) {
        throw Error(ErrorKind::InvalidParameter, "need s >= 1 and r >= 0, got r=" +
                                                     std::to_string(r) + " s=" + std::to_string(s));
    }
    if (std::gcd(r, s) != 1) {
        throw Error(ErrorKind::InvalidParameter,
                    "r=" + std::to_string(r) + " and s=" + std::to_string(s) + " are not coprime");
    }
}

long long mod(long long a, long long m) {
    const long long v = a % m;
    return v < 0 ? v + m : v;
}

/// e^{-i pi k / s}, with k reduced mod 2s first so large arguments stay exact.
Complex root(long long k, long long s) {
    const double angle = -std::numbers::pi * static_cast<double>(mod(k, 2 * s)) / s;
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

Complex gauss_coeff(long long l, long long r, long long s) {
    check_rs(r, s);
    const long long period = 2 * s;
    const long long lr = mod(l, period);
    Complex sum = 0.0;
    for (long long q = 0; q < period; ++q) {
        sum += root(mod(q * lr, period) + mod(r * mod(q * q, period), period), s);
    }
    return sum / static_cast<double>(period);
}

GaussDecomposition decompose_torsion(int j2, long long r, long long s) {
    validate(SpinParams{j2, 0.0});
    if (j2 % 2 != 0) {
        throw Error(ErrorKind::UnsupportedSpin,
                    "rotation decomposition needs integer spin, got j2=" + std::to_string(j2));
    }
    check_rs(r, s);
    GaussDecomposition out{j2, r, s, {}, 0.0, 0};
    out.coeffs.reserve(2 * s);
    for (long long l = 0; l < 2 * s; ++l) {
        out.coeffs.push_back(gauss_coeff(l, r, s));
        if (std::abs(out.coeffs.back()) > 1e-12) ++out.nonzero;
    }
    const int j = j2 / 2;
    for (int m = j; m >= -j; --m) {
        Complex sum = 0.0;
        for (long long l = 0; l < 2 * s; ++l) sum += out.coeffs[l] * root(l * m, s);
        const Complex target = root(r * m * m, s);
        out.reconstruction_error = std::max(out.reconstruction_error, std::abs(sum - target));
    }
    return out;
}

ComplexMatrix rational_floquet(int j2, long long r, long long s) {
    check_rs(r, s);
    const SpinParams params{j2, 0.0, std::numbers::pi / 2};
    validate(params);
    ComplexMatrix u = rotation_y(params, params.kick);
    for (int k = 0; k < params.dim(); ++k) {
        // m^2 = (j2 - 2k)^2 / 4, so pi r m^2 / s = pi r (j2-2k)^2 / (4s)
        const long long twice_m = j2 - 2 * k;
        const long long k4 = r * twice_m * twice_m; // phase exponent in units of pi/(4s)
        const double angle = -std::numbers::pi * static_cast<double>(mod(k4, 8 * s)) / (4.0 * s);
        u.row(k) *= Complex(std::cos(angle), std::sin(angle));
    }
    return u;
}

std::optional<int> verify_periodicity(int j2, long long r, long long s, int max_power) {
    if (max_power < 1) throw Error(ErrorKind::InvalidParameter, "max_power must be >= 1");
    const ComplexMatrix u = rational_floquet(j2, r, s);
    const int d = static_cast<int>(u.rows());
    ComplexMatrix power = ComplexMatrix::Identity(d, d);
    for (int n = 1; n <= max_power; ++n) {
        power = u * power;
        const Complex phase = power(0, 0);
        if (std::abs(std::abs(phase) - 1.0) > 1e-10) continue;
        const double dev = (power - phase * ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (dev <= 1e-10) return n;
    }
    return std::nullopt;
}

} // namespace kicked_top
