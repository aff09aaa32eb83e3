#ifndef RISKFILT_MODEL_HPP
#define RISKFILT_MODEL_HPP

#include <functional>
#include <vector>

#include "riskfilt/types.hpp"

namespace riskfilt {

/// Symmetric 2x2 criterion-weight matrix [[l11, l12], [l12, l22]].
struct SymMat2 {
    double l11 = 0.0;
    double l12 = 0.0;
    double l22 = 0.0;

    double det() const { return l11 * l22 - l12 * l12; }

    static SymMat2 zero() { return {0.0, 0.0, 0.0}; }
};

using TimeFn = std::function<double(double)>;
using MatFn = std::function<SymMat2(double)>;

inline TimeFn constant_fn(double v) {
    return [v](double) { return v; };
}

/// Signal/observation model dX = a X dt + dB, dY = A X dt + dBt (X0 = Y0 = 0)
/// with criterion matrix path Lambda, risk parameter mu and horizon T.
struct ModelSpec {
    TimeFn a;
    TimeFn A;
    MatFn Lambda;
    double mu = 0.0;
    double T = 1.0;

    static ModelSpec constant(double a, double A, SymMat2 lambda, double mu, double T) {
        return ModelSpec{constant_fn(a), constant_fn(A),
                         [lambda](double) { return lambda; }, mu, T};
    }
};

/// Model sampled at every grid node, with the criterion invariants checked
/// (l11 >= 0, l22 > 0, det >= 0 after clamping tiny negative drift).
struct ValidatedModel {
    TimeGrid grid;
    double mu = 0.0;
    std::vector<double> a, A, l11, l12, l22, detL;

    SymMat2 lambda(int i) const {
        const auto k = static_cast<std::size_t>(i);
        return {l11[k], l12[k], l22[k]};
    }
};

ValidatedModel validate_model(const ModelSpec& spec, const TimeGrid& grid);

/// Idempotent form: a validated model passes through unchanged.
inline const ValidatedModel& validate_model(const ValidatedModel& m) { return m; }

/// Fundamental solution Pi of dPi/dt = a(t) Pi, Pi(0) = 1.
ScalarPath transition_pi(const ValidatedModel& model);

/// Gaussian mean/covariance pair. The Volterra solver only evaluates K at
/// grid nodes with s <= t.
struct CovarianceSpec {
    std::function<double(double)> mean;
    std::function<double(double, double)> cov;
};

/// Covariance of the signal equation started from X0 = 0:
/// m = 0 and K(t,s) = Pi_t Pi_s int_0^{min(t,s)} Pi_r^{-2} dr (grid quadrature).
CovarianceSpec ou_covariance(const ValidatedModel& model);

}  // namespace riskfilt

#endif
