#include "riskfilt/filters.hpp"

#include <cmath>

namespace riskfilt {

namespace {

void check_increments(const TimeGrid& grid, std::span<const double> dY) {
    if (static_cast<int>(dY.size()) != grid.N) {
        throw ValidationError("BadIncrements",
                              "expected " + std::to_string(grid.N) + " observation increments, got " +
                                  std::to_string(dY.size()));
    }
}

ScalarPath require_no_blowup(const RiccatiSolution& fwd, const char* condition) {
    if (fwd.blowup) {
        throw ConditionError("ConditionViolated",
                             std::string(condition) + " fails: forward Riccati solution blows up at t = " +
                                 std::to_string(*fwd.blowup));
    }
    return fwd.gammaXX;
}

/// Prefix trapezoid integral of the drift path: L_0 = 0,
/// L_{m+1} = L_m + (z_m + z_{m+1}) dt / 2.
std::vector<double> drift_prefix(const ScalarPath& zdrift) {
    const int N = zdrift.grid.N;
    const double dt = zdrift.grid.dt();
    std::vector<double> L(static_cast<std::size_t>(N) + 1, 0.0);
    for (int m = 0; m < N; ++m) {
        L[static_cast<std::size_t>(m) + 1] =
            L[static_cast<std::size_t>(m)] + 0.5 * (zdrift[m] + zdrift[m + 1]) * dt;
    }
    return L;
}

}  // namespace

const char* filter_kind_name(FilterKind kind) {
    switch (kind) {
        case FilterKind::RiskNeutral: return "risk-neutral";
        case FilterKind::LEG: return "LEG";
        case FilterKind::RS: default: return "RS";
    }
}

FilterGains risk_neutral_gains(const ValidatedModel& model) {
    const RiccatiSolution fwd = solve_forward_gamma(model, 0.0);
    const ScalarPath g = require_no_blowup(fwd, "risk-neutral Riccati solve");
    const TimeGrid& grid = model.grid;
    FilterGains gains{FilterKind::RiskNeutral, ScalarPath(grid), ScalarPath(grid), ScalarPath(grid)};
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        gains.c[i] = -(model.l12[k] / model.l22[k]);
        gains.zdrift[i] = model.a[k] - model.A[k] * model.A[k] * g[i];
        gains.obsgain[i] = model.A[k] * g[i];
    }
    return gains;
}

FilterGains leg_gains(const ValidatedModel& model) {
    return leg_gains(model, solve_forward_gamma(model));
}

FilterGains leg_gains(const ValidatedModel& model, const RiccatiSolution& forward) {
    const ScalarPath g = require_no_blowup(forward, "(C_mu*)");
    const BackwardSolution bwd = solve_backward_Gamma(model, g);
    const TimeGrid& grid = model.grid;
    for (int i = 0; i <= grid.N; ++i) {
        if (g[i] < -kStrictMargin || bwd.Gamma[i] < -kStrictMargin) {
            throw ConditionError("ConditionViolated",
                                 "(C_mu*) fails: negative Riccati solution at t = " +
                                     std::to_string(grid.node(i)));
        }
    }
    FilterGains gains{FilterKind::LEG, ScalarPath(grid), ScalarPath(grid), ScalarPath(grid)};
    const double mu = model.mu;
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double gG = g[i] * bwd.Gamma[i];
        gains.c[i] = -(model.l12[k] / model.l22[k]) * (1.0 + mu * gG);
        gains.zdrift[i] = model.a[k] +
                          mu * (g[i] / model.l22[k]) *
                              (model.detL[k] - mu * model.l12[k] * model.l12[k] * gG) -
                          model.A[k] * model.A[k] * g[i];
        gains.obsgain[i] = model.A[k] * g[i];
    }
    return gains;
}

FilterGains rs_gains(const ValidatedModel& model) {
    return rs_gains(model, solve_forward_gamma(model));
}

FilterGains rs_gains(const ValidatedModel& model, const RiccatiSolution& forward) {
    const ScalarPath g = require_no_blowup(forward, "(C_mu**)");
    const TimeGrid& grid = model.grid;
    const double mu = model.mu;
    FilterGains gains{FilterKind::RS, ScalarPath(grid), ScalarPath(grid), ScalarPath(grid)};
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double margin = 1.0 - mu * g[i] * model.l11[k];
        if (margin <= kStrictMargin || g[i] < -kStrictMargin) {
            throw ConditionError("ConditionViolated",
                                 "(C_mu**) fails: 1 - mu gammaXX Lambda_11 = " + std::to_string(margin) +
                                     " at t = " + std::to_string(grid.node(i)));
        }
        const double denom = model.l22[k] - mu * g[i] * model.detL[k];
        if (denom <= 0.0) {
            throw ConditionError("ConditionViolated",
                                 "L22 - mu gammaXX det(Lambda) = " + std::to_string(denom) +
                                     " is not positive at t = " + std::to_string(grid.node(i)));
        }
        gains.c[i] = -(model.l12[k] / model.l22[k]) / (1.0 - mu * g[i] * model.detL[k] / model.l22[k]);
        // Closed-loop drift from substituting the RS feedback into the open-loop
        // Z equation: mu g det (1 - mu g L11) / (L22 - mu g det).
        gains.zdrift[i] = model.a[k] + mu * g[i] * model.detL[k] * margin / denom -
                          model.A[k] * model.A[k] * g[i];
        gains.obsgain[i] = model.A[k] * g[i];
    }
    return gains;
}

FilterRun apply_filter(const FilterGains& gains, std::span<const double> dY) {
    const TimeGrid& grid = gains.c.grid;
    check_increments(grid, dY);
    const double dt = grid.dt();
    FilterRun run{ScalarPath(grid), ScalarPath(grid)};
    double Z = 0.0;
    run.Z[0] = Z;
    run.h[0] = gains.c[0] * Z;
    for (int i = 0; i < grid.N; ++i) {
        const double step = std::exp(0.5 * (gains.zdrift[i] + gains.zdrift[i + 1]) * dt);
        Z = (Z + gains.obsgain[i] * dY[static_cast<std::size_t>(i)]) * step;
        require_finite(Z, "filter state Z");
        run.Z[i + 1] = Z;
        run.h[i + 1] = gains.c[i + 1] * Z;
    }
    return run;
}

KalmanOutput kalman_filter(const ValidatedModel& model, std::span<const double> dY) {
    const TimeGrid& grid = model.grid;
    check_increments(grid, dY);
    const FilterGains gains = risk_neutral_gains(model);
    const FilterRun run = apply_filter(gains, dY);
    KalmanOutput out{run.Z, std::vector<double>(static_cast<std::size_t>(grid.N))};
    const double dt = grid.dt();
    for (int i = 0; i < grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out.nu[k] = dY[k] - model.A[k] * out.piX[i] * dt;
    }
    return out;
}

ScalarPath risk_neutral_h(const ValidatedModel& model, const KalmanOutput& kal) {
    const TimeGrid& grid = model.grid;
    ScalarPath h(grid);
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h[i] = -(model.l12[k] / model.l22[k]) * kal.piX[i];
    }
    return h;
}

TriKernel extract_kernel(const FilterGains& gains) {
    const TimeGrid& grid = gains.c.grid;
    const std::vector<double> L = drift_prefix(gains.zdrift);
    TriKernel K(grid);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= grid.N; ++i) {
        double* row = K.row(i);
        const double ci = gains.c[i];
        const double Li = L[static_cast<std::size_t>(i)];
        for (int j = 0; j <= i; ++j) {
            row[j] = ci * std::exp(Li - L[static_cast<std::size_t>(j)]) * gains.obsgain[j];
        }
    }
    return K;
}

TriKernel extract_kernel_reference(const FilterGains& gains) {
    const TimeGrid& grid = gains.c.grid;
    const std::vector<double> L = drift_prefix(gains.zdrift);
    TriKernel K(grid);
    for (int i = 0; i <= grid.N; ++i) {
        double* row = K.row(i);
        const double ci = gains.c[i];
        const double Li = L[static_cast<std::size_t>(i)];
        for (int j = 0; j <= i; ++j) {
            row[j] = ci * std::exp(Li - L[static_cast<std::size_t>(j)]) * gains.obsgain[j];
        }
    }
    return K;
}

ScalarPath kernel_convolve(const TriKernel& kernel, std::span<const double> dY) {
    const TimeGrid& grid = kernel.grid();
    check_increments(grid, dY);
    ScalarPath h(grid);
    for (int i = 0; i <= grid.N; ++i) {
        const double* row = kernel.row(i);
        double acc = 0.0;
        for (int j = 0; j < i; ++j) acc += row[j] * dY[static_cast<std::size_t>(j)];
        h[i] = acc;
    }
    return h;
}

}  // namespace riskfilt
