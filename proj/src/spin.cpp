#include "kicked_top/spin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kicked_top/error.hpp"

namespace kicked_top {

void validate(const SpinParams& params) {
    if (params.j2 < 1) {
        throw Error(ErrorKind::InvalidSpin, "j2 must be >= 1, got " + std::to_string(params.j2));
    }
}

ComplexMatrix build_jz(const SpinParams& params) {
    validate(params);
    const int d = params.dim();
    ComplexMatrix jz = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) jz(k, k) = params.m(k);
    return jz;
}

namespace {

// <j,m+1| J+ |j,m> placed at (k-1, k), k indexing m = j - k.
Eigen::MatrixXd raising(const SpinParams& params) {
    validate(params);
    const int d = params.dim();
    const double j = params.j();
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(d, d);
    for (int k = 1; k < d; ++k) {
        const double m = params.m(k);
        jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return jp;
}

} // namespace

ComplexMatrix build_jx(const SpinParams& params) {
    const Eigen::MatrixXd jp = raising(params);
    return (0.5 * (jp + jp.transpose())).cast<Complex>();
}

ComplexMatrix build_jy(const SpinParams& params) {
    const Eigen::MatrixXd jp = raising(params);
    // (J+ - J-) / 2i
    return (jp - jp.transpose()).cast<Complex>() * Complex(0.0, -0.5);
}

ComplexMatrix rotation_y(const SpinParams& params, double angle) {
    const ComplexMatrix jy = build_jy(params);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(jy);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericError, "eigendecomposition of Jy did not converge");
    }
    const ComplexMatrix& v = solver.eigenvectors();
    const Eigen::VectorXd& w = solver.eigenvalues();
    const double residual = (jy * v - v * w.asDiagonal()).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        throw Error(ErrorKind::NumericError,
                    "Jy eigendecomposition residual " + std::to_string(residual));
    }
    StateVector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * angle * w(k));
    return v * phases.asDiagonal() * v.adjoint();
}

StateVector torsion_diagonal(const SpinParams& params) {
    validate(params);
    const int d = params.dim();
    StateVector diag(d);
    for (int k = 0; k < d; ++k) {
        const double m = params.m(k);
        // kappa0 / 2j = kappa0 / j2
        diag(k) = std::exp(-kI * (params.kappa0 * m * m / params.j2));
    }
    return diag;
}

ComplexMatrix floquet_operator(const SpinParams& params) {
    return torsion_diagonal(params).asDiagonal() * rotation_y(params, params.kick);
}

StateVector coherent_state(const SpinParams& params, double theta0, double phi0) {
    validate(params);
    const int n = params.j2;
    const double c = std::cos(0.5 * theta0);
    const Complex s = std::exp(-kI * phi0) * std::sin(0.5 * theta0);
    StateVector psi(n + 1);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) binom = binom * (n - k + 1) / k;
        psi(k) = std::sqrt(binom) * std::pow(c, n - k) * std::pow(s, k);
    }
    return psi;
}

ComplexMatrix parity_operator(const SpinParams& params) {
    return rotation_y(params, std::numbers::pi);
}

StateVector evolve(const ComplexMatrix& u, const StateVector& psi, int n) {
    if (u.rows() != u.cols() || u.cols() != psi.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "propagator is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                        ", state has " + std::to_string(psi.size()) + " components");
    }
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "step count must be >= 0");
    StateVector out = psi;
    for (int step = 0; step < n; ++step) out = u * out;
    const double drift = std::abs(out.norm() - psi.norm());
    if (drift > 1e-9 * std::max(1.0, psi.norm())) {
        throw Error(ErrorKind::NumericError, "norm drifted by " + std::to_string(drift) +
                                                 " during evolution; propagator not unitary");
    }
    // drift is roundoff only at this point; restore the input norm exactly
    if (n > 0 && psi.norm() > 0.0) out *= psi.norm() / out.norm();
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& u, int n) {
    if (u.rows() != u.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "power must be >= 0");
    ComplexMatrix out = ComplexMatrix::Identity(u.rows(), u.cols());
    for (int step = 0; step < n; ++step) out = u * out;
    return out;
}

double unitarity_defect(const ComplexMatrix& u) {
    return (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

} // namespace kicked_top
