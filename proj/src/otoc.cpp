#include "kicked_top/otoc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kicked_top/error.hpp"

namespace kicked_top {

namespace {

// Tr(X Y) without forming the product.
Complex trace_of_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    return (x.array() * y.transpose().array()).sum();
}

void require_same_shape(const ComplexMatrix& u, const ComplexMatrix& a) {
    if (u.rows() != u.cols() || a.rows() != a.cols() || u.rows() != a.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "propagator and observable shapes differ");
    }
}

} // namespace

ComplexMatrix heisenberg_evolve(const ComplexMatrix& u, const ComplexMatrix& a, int n) {
    require_same_shape(u, a);
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "step count must be >= 0");
    ComplexMatrix out = a;
    for (int step = 0; step < n; ++step) out = u.adjoint() * out * u;
    return out;
}

OtocSeries otoc_infinite(const SpinParams& params, int n_max) {
    return otoc_infinite(params, build_jz(params), n_max);
}

OtocSeries otoc_infinite(const SpinParams& params, const ComplexMatrix& observable, int n_max) {
    if (n_max < 1) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 1");
    const ComplexMatrix u = floquet_operator(params);
    require_same_shape(u, observable);
    const double d = params.dim();

    const ComplexMatrix a0_sq = observable * observable;
    OtocSeries series{params, {}};
    series.values.reserve(n_max);
    ComplexMatrix a = observable;
    for (int n = 1; n <= n_max; ++n) {
        a = u.adjoint() * a * u;
        const Complex c2 = trace_of_product(a * a, a0_sq) / d;
        const ComplexMatrix a_a0 = a * observable;
        const Complex c4 = trace_of_product(a_a0, a_a0) / d;
        OtocPoint p;
        p.n = n;
        p.c2 = c2.real();
        p.c4 = c4.real();
        p.c_inf = p.c2 - p.c4;
        p.imag_residual = std::max(std::abs(c2.imag()), std::abs(c4.imag()));
        series.values.push_back(p);
    }
    return series;
}

LyapunovEstimate quantum_lyapunov(const OtocSeries& series) {
    const auto at = [&](int n) -> double {
        for (const auto& p : series.values) {
            if (p.n == n) return p.c_inf;
        }
        throw Error(ErrorKind::UndefinedEstimate, "series lacks C(" + std::to_string(n) + ")");
    };
    const double c1 = at(1);
    const double c2 = at(2);
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        throw Error(ErrorKind::UndefinedEstimate, "needs C(1) > 0 and C(2) > 0, got " +
                                                      std::to_string(c1) + ", " + std::to_string(c2));
    }
    const double full = std::log(c2 / c1);
    return {0.5 * full, full};
}

} // namespace kicked_top
