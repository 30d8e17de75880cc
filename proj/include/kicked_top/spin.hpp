#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace kicked_top {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Kicked-top system definition. Spin is stored as j2 = 2j so half-integer
/// spins are exact; the basis is |j,m> ordered m = j, j-1, ..., -j.
struct SpinParams {
    int j2 = 1;
    double kappa0 = 0.0;
    double kick = std::numbers::pi / 2;

    double j() const { return 0.5 * j2; }
    int dim() const { return j2 + 1; }
    /// Magnetic quantum number of basis index k.
    double m(int k) const { return 0.5 * (j2 - 2 * k); }
};

/// Throws Error(InvalidSpin) unless j2 >= 1.
void validate(const SpinParams& params);

ComplexMatrix build_jz(const SpinParams& params);
ComplexMatrix build_jx(const SpinParams& params);
ComplexMatrix build_jy(const SpinParams& params);

/// exp(-i angle Jy) from the Hermitian eigendecomposition of Jy.
ComplexMatrix rotation_y(const SpinParams& params, double angle);

/// Diagonal of exp(-i kappa0 Jz^2 / 2j).
StateVector torsion_diagonal(const SpinParams& params);

/// One-period propagator exp(-i kappa0 Jz^2/2j) exp(-i p Jy).
ComplexMatrix floquet_operator(const SpinParams& params);

/// Spin coherent state |theta, phi> = (cos(theta/2)|0> + e^{-i phi} sin(theta/2)|1>)^{(x) 2j}
/// written in the Dicke basis. Its mean spin direction is
/// (sin theta cos phi, -sin theta sin phi, cos theta).
StateVector coherent_state(const SpinParams& params, double theta0, double phi0);

/// Collective pi rotation about y, exp(-i pi Jy). Commutes with every Floquet
/// operator of the same spin; squares to (-1)^{2j}.
ComplexMatrix parity_operator(const SpinParams& params);

/// U^n psi by repeated application. Roundoff drift in the norm is checked
/// (NumericError above 1e-9) and then removed.
StateVector evolve(const ComplexMatrix& u, const StateVector& psi, int n);

/// U^n by repeated multiplication.
ComplexMatrix matrix_power(const ComplexMatrix& u, int n);

/// max_ij |(U U^dagger - I)_ij|
double unitarity_defect(const ComplexMatrix& u);

/// max_ij |(AB - BA)_ij|
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace kicked_top
