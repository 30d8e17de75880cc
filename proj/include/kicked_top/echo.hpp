#pragma once

#include <vector>

#include "kicked_top/spin.hpp"

namespace kicked_top {

struct EchoPoint {
    int n = 0;
    double fidelity = 1.0;
};

/// Loschmidt echo F(n), n = 0..n_max, for the perturbation kappa0 -> kappa0 + delta.
struct EchoSeries {
    SpinParams params;
    double delta = 0.0;
    std::vector<EchoPoint> values;
};

/// Haar average (d + |Tr[U^-n(kappa0) U^n(kappa0 + delta)]|^2) / (d(d+1)).
double average_fidelity(const SpinParams& params, double delta, int n);
EchoSeries average_fidelity_series(const SpinParams& params, double delta, int n_max);

/// |<psi0| U^-n(kappa0) U^n(kappa0 + delta) |psi0>|^2; psi0 must be normalised.
double state_fidelity(const SpinParams& params, double delta, int n, const StateVector& psi0);
EchoSeries state_fidelity_series(const SpinParams& params, double delta, int n_max,
                                 const StateVector& psi0);

enum class DecayRegime { Gaussian, Exponential, Other };

const char* to_string(DecayRegime regime);

struct DecayFit {
    DecayRegime regime = DecayRegime::Other;
    double rate = 0.0;        // |slope| of ln F against n^2 (gaussian) or n (exponential)
    double fit_quality = 1.0; // R^2 of the winning model
    int points = 0;           // samples used for the regime decision
};

/// Classifies the decay over n <= window. Logs are taken of the echo with
/// the Haar floor 1/(d+1) removed, and sampling stops at the first F <= 0.01.
/// Both models are fitted on the same points; the smaller RMS residual wins.
/// The reported rate is refitted on the winner's own range: F > 0.5 for
/// gaussian, 0.01 < F < 0.5 for exponential.
DecayFit decay_classify(const EchoSeries& series, int window);

/// Last n before the echo first reaches `factor` times the random-unitary
/// plateau 1/d; the whole series if it never does.
int presaturation_window(const EchoSeries& series, double factor = 3.0);

} // namespace kicked_top
