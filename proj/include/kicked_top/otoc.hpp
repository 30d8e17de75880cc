#pragma once

#include <vector>

#include "kicked_top/spin.hpp"

namespace kicked_top {

/// One time step of the infinite-temperature OTOC, C = C2 - C4.
struct OtocPoint {
    int n = 0;
    double c_inf = 0.0;
    double c2 = 0.0;
    double c4 = 0.0;
    /// Largest imaginary part discarded from the C2/C4 traces.
    double imag_residual = 0.0;
};

struct OtocSeries {
    SpinParams params;
    std::vector<OtocPoint> values; // n = 1..n_max
};

/// A(n) = U^-n A U^n
ComplexMatrix heisenberg_evolve(const ComplexMatrix& u, const ComplexMatrix& a, int n);

/// C(n) = -(1/2) Tr(rho [A(n), A]^2) with rho = I/(2j+1), A = Jz.
OtocSeries otoc_infinite(const SpinParams& params, int n_max);

/// Same with a caller-chosen Hermitian observable.
OtocSeries otoc_infinite(const SpinParams& params, const ComplexMatrix& observable, int n_max);

struct LyapunovEstimate {
    double half = 0.0; // 0.5 ln(C(2)/C(1)), from C ~ e^{2 lambda t}
    double full = 0.0; // ln(C(2)/C(1))
};

/// Two-point growth-rate estimates from the first two OTOC values.
LyapunovEstimate quantum_lyapunov(const OtocSeries& series);

} // namespace kicked_top
