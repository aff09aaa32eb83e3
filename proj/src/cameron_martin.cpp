#include "riskfilt/cameron_martin.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace riskfilt {

GMatrix gain_matrix_G(const SymMat2& M, double mu, double gammaT) {
    const double margin = 1.0 - mu * M.l11 * gammaT;
    if (margin <= kStrictMargin) {
        throw ConditionError("ConditionViolated",
                             "1 - mu M11 gammaXX(T) = " + std::to_string(margin) + " is not positive");
    }
    GMatrix G;
    const double inv = 1.0 / margin;
    G.value.l11 = inv * M.l11;
    G.value.l12 = inv * M.l12;
    G.value.l22 = inv * (M.l22 - mu * gammaT * M.det());
    G.prefactor = 1.0 / std::sqrt(margin);
    return G;
}

ConditionalLaplace::ConditionalLaplace(const ValidatedModel& model, const SymMat2& M, double upTo)
    : model_(model), iT_(model.grid.index_of(upTo)) {
    if (iT_ < 1) {
        throw ValidationError("BadHorizon", "upTo must be at least one grid step");
    }
    const RiccatiSolution fwd = solve_forward_gamma(model_);
    if (fwd.blowup && *fwd.blowup <= upTo) {
        throw ConditionError("ConditionViolated",
                             "(C_mu) fails: gammaXX blows up at t = " + std::to_string(*fwd.blowup));
    }
    gammaXX_ = fwd.gammaXX;
    for (int i = 0; i <= iT_; ++i) {
        if (gammaXX_[i] < -kStrictMargin) {
            throw ConditionError("ConditionViolated", "(C_mu) fails: gammaXX < 0 on [0, upTo]");
        }
    }
    G_ = gain_matrix_G(M, model_.mu, gammaXX_[iT_]);

    // One-step transition factors of the open-loop auxiliary state equation
    //   dZ = [a - g (A^2 - mu L11)] Z dt + mu g L12 h dt + g A dY,  Z_0 = 0,
    // advanced the same way as apply_filter (trapezoidal log-drift).
    const double dt = model_.grid.dt();
    const double mu = model_.mu;
    std::vector<double> D(static_cast<std::size_t>(model_.grid.N) + 1);
    for (int i = 0; i <= model_.grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        D[k] = model_.a[k] - gammaXX_[i] * (model_.A[k] * model_.A[k] - mu * model_.l11[k]);
    }
    exp_drift_.resize(static_cast<std::size_t>(iT_));
    for (int i = 0; i < iT_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        exp_drift_[k] = std::exp(0.5 * (D[k] + D[k + 1]) * dt);
    }

    rn_gains_ = risk_neutral_gains(model_);

    std::vector<double> f(static_cast<std::size_t>(iT_) + 1);
    for (int i = 0; i <= iT_; ++i) {
        f[static_cast<std::size_t>(i)] = gammaXX_[i] * model_.l11[static_cast<std::size_t>(i)];
    }
    det_term_ = std::log(G_.prefactor) + 0.5 * mu * trapezoid(f, dt, iT_);
}

double ConditionalLaplace::eval(const ScalarPath& h, double g, std::span<const double> dY) const {
    const TimeGrid& grid = model_.grid;
    if (h.grid != grid) {
        throw ValidationError("GridMismatch", "estimate path h is not on the model grid");
    }
    if (static_cast<int>(dY.size()) != grid.N) {
        throw ValidationError("BadIncrements", "expected one observation increment per grid step");
    }
    const double dt = grid.dt();
    const double mu = model_.mu;

    double logI = det_term_;

    // Quadratic form in (Z_T, g) with the conditioned terminal matrix, the
    // running quadratic form in (Z, h), and the stochastic exponential in
    // Z - pi(X), in one sweep.
    double Z = 0.0;
    double pi = 0.0;
    auto qf = [&](int i, double Zi) {
        const auto k = static_cast<std::size_t>(i);
        return model_.l11[k] * Zi * Zi + 2.0 * model_.l12[k] * Zi * h[i] +
               model_.l22[k] * h[i] * h[i];
    };
    auto dev2 = [&](int i, double Zi, double pii) {
        const double d = model_.A[static_cast<std::size_t>(i)] * (Zi - pii);
        return d * d;
    };
    double quad_acc = 0.0;
    double comp_acc = 0.0;
    double ito_acc = 0.0;
    double qf_prev = qf(0, Z);
    double dev_prev = dev2(0, Z, pi);
    for (int i = 0; i < iT_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double dnu = dY[k] - model_.A[k] * pi * dt;
        ito_acc += model_.A[k] * (Z - pi) * dnu;
        Z = (Z + mu * gammaXX_[i] * model_.l12[k] * h[i] * dt + gammaXX_[i] * model_.A[k] * dY[k]) *
            exp_drift_[k];
        pi = (pi + rn_gains_.obsgain[i] * dY[k]) *
             std::exp(0.5 * (rn_gains_.zdrift[i] + rn_gains_.zdrift[i + 1]) * dt);
        const double qf_cur = qf(i + 1, Z);
        const double dev_cur = dev2(i + 1, Z, pi);
        quad_acc += 0.5 * (qf_prev + qf_cur) * dt;
        comp_acc += 0.5 * (dev_prev + dev_cur) * dt;
        qf_prev = qf_cur;
        dev_prev = dev_cur;
    }

    const SymMat2& Gm = G_.value;
    logI += 0.5 * mu * (Gm.l11 * Z * Z + 2.0 * Gm.l12 * Z * g + Gm.l22 * g * g);
    logI += 0.5 * mu * quad_acc;
    logI += ito_acc - 0.5 * comp_acc;
    require_finite(logI, "conditional Laplace exponent");
    return mu * std::exp(logI);
}

double conditional_laplace_rhs(const ValidatedModel& model, const SymMat2& M, const ScalarPath& h,
                               double g, std::span<const double> dY, double upTo) {
    return ConditionalLaplace(model, M, upTo).eval(h, g, dY);
}

double optimal_risk(const ValidatedModel& model) {
    const TimeGrid& grid = model.grid;
    const RiccatiSolution fwd = solve_forward_gamma(model);
    if (fwd.blowup) {
        throw ConditionError("ConditionViolated",
                             "(C_mu*) fails: gammaXX blows up at t = " + std::to_string(*fwd.blowup));
    }
    const BackwardSolution bwd = solve_backward_Gamma(model, fwd.gammaXX);
    const double dt = grid.dt();

    std::vector<double> f(static_cast<std::size_t>(grid.N) + 1);
    for (int i = 0; i <= grid.N; ++i) {
        f[static_cast<std::size_t>(i)] = fwd.gammaXX[i] * model.l11[static_cast<std::size_t>(i)];
    }
    double expo = 0.5 * model.mu * trapezoid(f, dt, grid.N);
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        f[k] = bwd.Gamma[i] * model.A[k] * model.A[k] * fwd.gammaXX[i] * fwd.gammaXX[i];
    }
    expo += 0.5 * model.mu * trapezoid(f, dt, grid.N);
    require_finite(expo, "optimal risk exponent");
    return model.mu * std::exp(expo);
}

}  // namespace riskfilt
