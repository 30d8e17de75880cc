#include "kicked_top/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kicked_top/error.hpp"

namespace kicked_top::chebyshev {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kInvSqrt2 = 0.70710678118654752;

void require_steps(int n) {
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "step count must be >= 0, got " + std::to_string(n));
}

void require_otoc_step(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidParameter, "OTOC is defined for n >= 1, got " + std::to_string(n));
}

void require_domain(double x) {
    if (!(std::abs(x) <= 1.0)) {
        throw Error(ErrorKind::DomainError, "Chebyshev argument outside [-1, 1]: " + std::to_string(x));
    }
}

// e^{-i pi k / 4} without accumulating rounding in k.
Complex eighth_root(long k) {
    static const Complex table[8] = {
        {1.0, 0.0},        {kInvSqrt2, -kInvSqrt2}, {0.0, -1.0}, {-kInvSqrt2, -kInvSqrt2},
        {-1.0, 0.0},       {-kInvSqrt2, kInvSqrt2}, {0.0, 1.0},  {kInvSqrt2, kInvSqrt2},
    };
    return table[((k % 8) + 8) % 8];
}

// i^n
Complex i_power(int n) { return eighth_root(-2L * n); }

// cos(n pi / 2), sin(n pi / 2)
std::pair<double, double> quarter_turn(int n) {
    switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

double sign_power(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Global phase between the Jz^2 torsion and the Ising form, per kick.
Complex qubit_phase(int n, double kappa0) { return std::exp(-kI * (n * kappa0 / 4.0)); }

// 2 Re(alpha* alpha~ + beta* beta~): the trace of a sector block product.
double sector_overlap(const ChebBlock& a, const ChebBlock& b) {
    return 2.0 * (std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta).real();
}

} // namespace

double cheb_T(int n, double x) {
    require_domain(x);
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "T_n needs n >= 0");
    return std::cos(n * std::acos(x));
}

double cheb_U(int k, double x) {
    require_domain(x);
    if (k < -1) throw Error(ErrorKind::InvalidParameter, "U_k needs k >= -1");
    if (k == -1) return 0.0;
    if (std::abs(x) == 1.0) {
        // limit at x = +-1: U_k(+-1) = (k+1)(+-1)^k
        return (x > 0 ? 1.0 : sign_power(k)) * (k + 1);
    }
    // sin(theta) loses relative accuracy near the endpoints; the recurrence does not
    if (1.0 - std::abs(x) < 1e-6) return cheb_U_recurrence(k, x);
    const double theta = std::acos(x);
    return std::sin((k + 1) * theta) / std::sin(theta);
}

double cheb_T_recurrence(int n, double x) {
    require_domain(x);
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "T_n needs n >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double cheb_U_recurrence(int k, double x) {
    require_domain(x);
    if (k < -1) throw Error(ErrorKind::InvalidParameter, "U_k needs k >= -1");
    double prev = 0.0; // U_{-1}
    double cur = 1.0;  // U_0
    if (k == -1) return prev;
    for (int i = 0; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

ChebBlock three_qubit_block(int n, double kappa0) {
    require_steps(n);
    const double kappa = kappa0 / 6.0;
    ChebBlock block;
    block.n = n;
    block.system = System::ThreeQubit;
    block.chi = std::sin(kappa0 / 3.0) / 2.0;
    const double t = cheb_T(n, block.chi);
    const double u = cheb_U(n - 1, block.chi);
    block.alpha = Complex(t, 0.5 * u * std::cos(2.0 * kappa));
    block.beta = (kSqrt3 / 2.0) * u * std::exp(kI * (2.0 * kappa));
    return block;
}

ChebBlock four_qubit_block(int n, double kappa0) {
    require_steps(n);
    const double kappa = kappa0 / 2.0;
    ChebBlock block;
    block.n = n;
    block.system = System::FourQubit;
    block.chi = std::sin(kappa) / 2.0;
    const double t = cheb_T(n, block.chi);
    const double u = cheb_U(n - 1, block.chi);
    block.alpha = Complex(t, 0.5 * u * std::cos(kappa));
    block.beta = (kSqrt3 / 2.0) * u * std::exp(kI * kappa);
    return block;
}

EchoPair make_echo_pair(System system, int n, double kappa0, double delta) {
    EchoPair pair;
    pair.kappa0 = kappa0;
    pair.delta = delta;
    const double shifted = kappa0 + delta;
    if (system == System::ThreeQubit) {
        pair.base = three_qubit_block(n, kappa0);
        pair.perturbed = three_qubit_block(n, shifted);
    } else {
        pair.base = four_qubit_block(n, kappa0);
        pair.perturbed = four_qubit_block(n, shifted);
    }
    return pair;
}

Eigen::Matrix2cd three_qubit_sector_power(int n, double kappa0, Parity parity) {
    const ChebBlock b = three_qubit_block(n, kappa0);
    const double sign = parity == Parity::Positive ? 1.0 : -1.0;
    // (+-1)^n e^{-i n (+-pi/4 + kappa)}
    const Complex prefactor = (parity == Parity::Positive ? 1.0 : sign_power(n)) *
                              eighth_root(parity == Parity::Positive ? n : -n) *
                              std::exp(-kI * (n * kappa0 / 6.0));
    Eigen::Matrix2cd m;
    m << b.alpha, -sign * std::conj(b.beta), sign * b.beta, std::conj(b.alpha);
    return prefactor * m;
}

Eigen::Matrix4cd three_qubit_parity_basis() {
    const double s = kInvSqrt2;
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    p(0, 0) = s;
    p(3, 0) = -kI * s;
    p(1, 1) = s;
    p(2, 1) = kI * s;
    p(0, 2) = s;
    p(3, 2) = kI * s;
    p(1, 3) = s;
    p(2, 3) = -kI * s;
    return p;
}

Eigen::Matrix4cd three_qubit_propagator(int n, double kappa0) {
    Eigen::Matrix4cd blocks = Eigen::Matrix4cd::Zero();
    blocks.topLeftCorner<2, 2>() = three_qubit_sector_power(n, kappa0, Parity::Positive);
    blocks.bottomRightCorner<2, 2>() = three_qubit_sector_power(n, kappa0, Parity::Negative);
    const Eigen::Matrix4cd p = three_qubit_parity_basis();
    return qubit_phase(n, kappa0) * p * blocks * p.adjoint();
}

Eigen::Matrix2cd four_qubit_positive_block(int n, double kappa0) {
    const ChebBlock b = four_qubit_block(n, kappa0);
    // e^{-i n (pi + kappa)/2} with kappa = kappa0/2
    const Complex prefactor = eighth_root(2L * n) * std::exp(-kI * (n * kappa0 / 4.0));
    Eigen::Matrix2cd m;
    m << b.alpha, kI * std::conj(b.beta), kI * b.beta, std::conj(b.alpha);
    return prefactor * m;
}

Eigen::Matrix2cd four_qubit_negative_block(int n, double kappa0) {
    require_steps(n);
    const double kappa = kappa0 / 2.0;
    const auto [c, s] = quarter_turn(n);
    const Complex twist = std::exp(kI * (0.75 * kappa));
    Eigen::Matrix2cd m;
    m << c, twist * s, -std::conj(twist) * s, c;
    return std::exp(-kI * (0.75 * n * kappa)) * m;
}

Eigen::Matrix<Complex, 5, 5> four_qubit_parity_basis() {
    const double s = kInvSqrt2;
    Eigen::Matrix<Complex, 5, 5> q = Eigen::Matrix<Complex, 5, 5>::Zero();
    q(1, 0) = s;
    q(3, 0) = -s;
    q(0, 1) = s;
    q(4, 1) = s;
    q(2, 2) = 1.0;
    q(1, 3) = s;
    q(3, 3) = s;
    q(0, 4) = s;
    q(4, 4) = -s;
    return q;
}

Eigen::Matrix<Complex, 5, 5> four_qubit_propagator(int n, double kappa0) {
    Eigen::Matrix<Complex, 5, 5> blocks = Eigen::Matrix<Complex, 5, 5>::Zero();
    // phi1+ is an eigenvector with eigenvalue -1 for every kappa0
    blocks(0, 0) = sign_power(n);
    blocks.block<2, 2>(1, 1) = four_qubit_positive_block(n, kappa0);
    blocks.block<2, 2>(3, 3) = four_qubit_negative_block(n, kappa0);
    const auto q = four_qubit_parity_basis();
    return qubit_phase(n, kappa0) * q * blocks * q.adjoint();
}

OtocParts three_qubit_otoc_parts(int n, double kappa0) {
    require_otoc_step(n);
    const ChebBlock b = three_qubit_block(n, kappa0);
    const double b2 = std::norm(b.beta);
    OtocParts parts;
    parts.c2 = (41.0 - 32.0 * b2) / 16.0;
    parts.c4 = sign_power(n) * (41.0 - 160.0 * b2 + 128.0 * b2 * b2) / 16.0;
    parts.c_inf = parts.c2 - parts.c4;
    return parts;
}

double three_qubit_otoc(int n, double kappa0) { return three_qubit_otoc_parts(n, kappa0).c_inf; }

double three_qubit_otoc_small_kappa(int n, double kappa0) {
    require_steps(n);
    const double k2 = kappa0 * kappa0;
    const double k4 = k2 * k2;
    const double nn = static_cast<double>(n) * n;
    if (n % 2 == 0) return nn * k2 / 6.0 - 13.0 / 2592.0 * nn * nn * k4;
    return 5.0 / 8.0 + (nn - 1.0) * (nn - 1.0) * k4 / 288.0;
}

double four_qubit_otoc(int n, double kappa0) {
    require_otoc_step(n);
    const ChebBlock b = four_qubit_block(n, kappa0);
    const double b2 = std::norm(b.beta);
    if (n % 2 == 0) {
        const double twisted = (b.alpha * b.alpha * std::exp(kI * (n * kappa0 / 4.0))).real();
        return (34.0 - 16.0 * b2 - 32.0 * twisted - 2.0 * std::cos(0.75 * n * kappa0)) / 5.0;
    }
    const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double twisted = (b.alpha * std::exp(kI * (n * kappa0 / 2.0))).imag();
    return (25.0 - 16.0 * b2 - 16.0 * sign * twisted) / 5.0;
}

double three_qubit_avg_echo(int n, double kappa0, double delta) {
    const EchoPair pair = make_echo_pair(System::ThreeQubit, n, kappa0, delta);
    const double x = sector_overlap(pair.base, pair.perturbed);
    return (1.0 + x * x) / 5.0;
}

double four_qubit_avg_echo(int n, double kappa0, double delta) {
    const EchoPair pair = make_echo_pair(System::FourQubit, n, kappa0, delta);
    const double x = sector_overlap(pair.base, pair.perturbed);
    const auto [c, s] = quarter_turn(n);
    const double negative = c * c + s * s * std::cos(3.0 * delta / 8.0);
    const Complex trace = 1.0 + std::exp(kI * (n * delta / 4.0)) * x +
                          2.0 * std::exp(kI * (3.0 * n * delta / 8.0)) * negative;
    return (5.0 + std::norm(trace)) / 30.0;
}

Eigen::Vector4cd evolve_000(int n, double kappa0) {
    const ChebBlock b = three_qubit_block(n, kappa0);
    const Complex in = i_power(n);
    const Complex phase =
        0.5 * qubit_phase(n, kappa0) * eighth_root(3L * n) * std::exp(-kI * (n * kappa0 / 6.0));
    Eigen::Vector4cd psi;
    psi << (1.0 + in) * b.alpha, -(1.0 - in) * b.beta, (1.0 + in) * kI * b.beta,
        (1.0 - in) * kI * b.alpha;
    return phase * psi;
}

double state_fidelity_000(int n, double kappa0, double delta) {
    const EchoPair pair = make_echo_pair(System::ThreeQubit, n, kappa0, delta);
    return std::norm(std::conj(pair.base.alpha) * pair.perturbed.alpha +
                     std::conj(pair.base.beta) * pair.perturbed.beta);
}

namespace {

FixedPointAmplitudes fixed_point_from(const ChebBlock& b) {
    return {(b.alpha - kI * kSqrt3 * std::conj(b.beta)) / 2.0,
            (b.beta + kI * kSqrt3 * std::conj(b.alpha)) / 2.0};
}

} // namespace

FixedPointAmplitudes fixed_point_amplitudes(int n, double kappa0) {
    return fixed_point_from(three_qubit_block(n, kappa0));
}

double state_fidelity_ppp(int n, double kappa0, double delta) {
    const EchoPair pair = make_echo_pair(System::ThreeQubit, n, kappa0, delta);
    const FixedPointAmplitudes a = fixed_point_from(pair.base);
    const FixedPointAmplitudes b = fixed_point_from(pair.perturbed);
    return std::norm(std::conj(a.gamma) * b.gamma + std::conj(a.delta) * b.delta);
}

} // namespace kicked_top::chebyshev
