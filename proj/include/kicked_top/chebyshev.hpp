#pragma once

#include <Eigen/Dense>

#include "kicked_top/spin.hpp"

// Exact propagators of the 3-qubit (j = 3/2) and 4-qubit (j = 2) kicked tops
// at p = pi/2, written with Chebyshev polynomials of chi = sin(kappa0/3)/2 and
// chi = sin(kappa0/2)/2 respectively.
//
// Sector blocks follow the qubit (Ising) convention, which differs from
// exp(-i kappa0 Jz^2/2j) exp(-i pi Jy/2) by the global phase e^{-i kappa0/4}
// per kick. The full propagators in the Dicke basis include that phase.
namespace kicked_top::chebyshev {

/// T_n(x) = cos(n arccos x). Throws Error(DomainError) for |x| > 1.
double cheb_T(int n, double x);
/// U_k(x) = sin((k+1) theta) / sin(theta), k >= -1 (U_{-1} = 0).
double cheb_U(int k, double x);

double cheb_T_recurrence(int n, double x);
double cheb_U_recurrence(int k, double x);

enum class System { ThreeQubit, FourQubit };
enum class Parity { Positive, Negative };

/// Closed-form propagator entries (alpha_n, beta_n) of the two-dimensional
/// chaotic sector.
struct ChebBlock {
    int n = 0;
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    double chi = 0.0;
    System system = System::ThreeQubit;
};

/// Unperturbed and perturbed blocks for echo formulas; delta == 0 gives
/// bit-identical members.
struct EchoPair {
    double kappa0 = 0.0;
    double delta = 0.0;
    ChebBlock base;
    ChebBlock perturbed;
};

ChebBlock three_qubit_block(int n, double kappa0);
ChebBlock four_qubit_block(int n, double kappa0);
EchoPair make_echo_pair(System system, int n, double kappa0, double delta);

/// U_+^n and U_-^n of the 3-qubit top in the bases {phi1+, phi2+}, {phi1-, phi2-}.
Eigen::Matrix2cd three_qubit_sector_power(int n, double kappa0, Parity parity);
/// Columns phi1+, phi2+, phi1-, phi2- expressed in the Dicke basis.
Eigen::Matrix4cd three_qubit_parity_basis();
/// U^n in the Dicke basis (|000>, |W>, |Wbar>, |111>).
Eigen::Matrix4cd three_qubit_propagator(int n, double kappa0);

/// U_+^n of the 4-qubit top in the basis {phi2+, phi3+}.
Eigen::Matrix2cd four_qubit_positive_block(int n, double kappa0);
/// U_-^n of the 4-qubit top in the basis {phi1-, phi2-}; period 4 in n up to phase.
Eigen::Matrix2cd four_qubit_negative_block(int n, double kappa0);
/// Columns phi1+, phi2+, phi3+, phi1-, phi2- expressed in the Dicke basis.
Eigen::Matrix<Complex, 5, 5> four_qubit_parity_basis();
/// U^n in the Dicke basis m = 2..-2.
Eigen::Matrix<Complex, 5, 5> four_qubit_propagator(int n, double kappa0);

struct OtocParts {
    double c_inf = 0.0;
    double c2 = 0.0;
    double c4 = 0.0;
};

/// Infinite-temperature OTOC of Jz for j = 3/2 with its two- and four-point parts.
OtocParts three_qubit_otoc_parts(int n, double kappa0);
double three_qubit_otoc(int n, double kappa0);
/// Truncated small-kappa0 expansion of three_qubit_otoc.
double three_qubit_otoc_small_kappa(int n, double kappa0);
double four_qubit_otoc(int n, double kappa0);

/// Haar-averaged Loschmidt echo between kappa0 and kappa0 + delta.
double three_qubit_avg_echo(int n, double kappa0, double delta);
double four_qubit_avg_echo(int n, double kappa0, double delta);

/// U^n |000> for j = 3/2 in the Dicke basis.
Eigen::Vector4cd evolve_000(int n, double kappa0);

/// |<000| U^-n(kappa0) U^n(kappa0 + delta) |000>|^2
double state_fidelity_000(int n, double kappa0, double delta);

/// Amplitudes of U^n|+++>_y on phi1+ and phi2+ without the global phase.
struct FixedPointAmplitudes {
    Complex gamma;
    Complex delta;
};
FixedPointAmplitudes fixed_point_amplitudes(int n, double kappa0);

/// |<+++| U^-n(kappa0) U^n(kappa0 + delta) |+++>|^2
double state_fidelity_ppp(int n, double kappa0, double delta);

} // namespace kicked_top::chebyshev
