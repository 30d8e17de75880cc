#include "kicked_top/echo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kicked_top/error.hpp"

namespace kicked_top {

namespace {

SpinParams perturbed(const SpinParams& params, double delta) {
    SpinParams p = params;
    p.kappa0 += delta;
    return p;
}

double haar_average(double trace_abs2, double d) { return (d + trace_abs2) / (d * (d + 1.0)); }

} // namespace

EchoSeries average_fidelity_series(const SpinParams& params, double delta, int n_max) {
    if (n_max < 0) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 0");
    const ComplexMatrix u = floquet_operator(params);
    const ComplexMatrix v = floquet_operator(perturbed(params, delta));
    const int d = params.dim();

    EchoSeries series{params, delta, {}};
    series.values.reserve(n_max + 1);
    series.values.push_back({0, 1.0});
    ComplexMatrix forward = ComplexMatrix::Identity(d, d);
    ComplexMatrix shifted = ComplexMatrix::Identity(d, d);
    for (int n = 1; n <= n_max; ++n) {
        forward = u * forward;
        shifted = v * shifted;
        // Tr(P^dagger Q) = sum conj(P) .* Q
        const Complex trace = (forward.conjugate().array() * shifted.array()).sum();
        series.values.push_back({n, haar_average(std::norm(trace), d)});
    }
    return series;
}

double average_fidelity(const SpinParams& params, double delta, int n) {
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "step count must be >= 0");
    return average_fidelity_series(params, delta, n).values.back().fidelity;
}

EchoSeries state_fidelity_series(const SpinParams& params, double delta, int n_max,
                                 const StateVector& psi0) {
    if (n_max < 0) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 0");
    const ComplexMatrix u = floquet_operator(params);
    if (psi0.size() != u.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "initial state has " + std::to_string(psi0.size()) +
                                                      " components, expected " +
                                                      std::to_string(u.rows()));
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::NormalizationError,
                    "initial state norm is " + std::to_string(psi0.norm()));
    }
    const ComplexMatrix v = floquet_operator(perturbed(params, delta));

    EchoSeries series{params, delta, {}};
    series.values.reserve(n_max + 1);
    StateVector a = psi0;
    StateVector b = psi0;
    series.values.push_back({0, std::norm(a.dot(b))});
    for (int n = 1; n <= n_max; ++n) {
        a = u * a;
        b = v * b;
        series.values.push_back({n, std::norm(a.dot(b))});
    }
    return series;
}

double state_fidelity(const SpinParams& params, double delta, int n, const StateVector& psi0) {
    if (n < 0) throw Error(ErrorKind::InvalidParameter, "step count must be >= 0");
    return state_fidelity_series(params, delta, n, psi0).values.back().fidelity;
}

const char* to_string(DecayRegime regime) {
    switch (regime) {
    case DecayRegime::Gaussian: return "gaussian";
    case DecayRegime::Exponential: return "exponential";
    case DecayRegime::Other: return "other";
    }
    return "other";
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    double r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double count = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorKind::FitError, "degenerate abscissa in fit window");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / count);
    fit.r2 = syy > 0.0 ? 1.0 - ss / syy : 1.0;
    return fit;
}

} // namespace

DecayFit decay_classify(const EchoSeries& series, int window) {
    const double d = series.params.dim();
    const double floor = 1.0 / (d + 1.0);

    std::vector<double> ns, fs, ys;
    for (const auto& p : series.values) {
        if (p.n > window) break;
        if (p.fidelity <= 0.01 || p.fidelity - floor <= 0.0) break;
        ns.push_back(p.n);
        fs.push_back(p.fidelity);
        ys.push_back(std::log((p.fidelity - floor) / (1.0 - floor)));
    }
    if (ns.size() < 4) {
        throw Error(ErrorKind::FitError, "need at least 4 pre-saturation points, have " +
                                             std::to_string(ns.size()));
    }

    DecayFit result;
    result.points = static_cast<int>(ns.size());
    double spread = 0.0;
    for (double y : ys) spread = std::max(spread, std::abs(y - ys.front()));
    if (spread < 1e-12) return result; // flat: no decay to classify

    std::vector<double> n2(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) n2[i] = ns[i] * ns[i];
    const LineFit gauss = fit_line(n2, ys);
    const LineFit expo = fit_line(ns, ys);
    const bool is_gauss = gauss.rms <= expo.rms;
    result.regime = is_gauss ? DecayRegime::Gaussian : DecayRegime::Exponential;
    result.fit_quality = is_gauss ? gauss.r2 : expo.r2;
    result.rate = std::abs(is_gauss ? gauss.slope : expo.slope);

    std::vector<double> wx, wy;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const bool inside = is_gauss ? fs[i] > 0.5 : fs[i] < 0.5;
        if (!inside) continue;
        wx.push_back(is_gauss ? n2[i] : ns[i]);
        wy.push_back(ys[i]);
    }
    if (wx.size() >= 2 && wx.front() != wx.back()) result.rate = std::abs(fit_line(wx, wy).slope);
    return result;
}

int presaturation_window(const EchoSeries& series, double factor) {
    const double plateau = factor / series.params.dim();
    int last = 0;
    for (const auto& p : series.values) {
        if (p.fidelity <= plateau) return last;
        last = p.n;
    }
    return last;
}

} // namespace kicked_top
