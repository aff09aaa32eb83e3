#include "riskfilt/volterra.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace riskfilt {

namespace {

constexpr double kDiagTol = 1e-10;

void check_increments(const TimeGrid& grid, std::span<const double> dY) {
    if (static_cast<int>(dY.size()) != grid.N) {
        throw ValidationError("BadIncrements",
                              "expected " + std::to_string(grid.N) + " observation increments, got " +
                                  std::to_string(dY.size()));
    }
}

/// Column sweep shared by the parallel and serial variants.
template <bool Parallel>
VolterraSolution volterra_fill(const CovarianceSpec& cov, const ValidatedModel& model) {
    const TimeGrid& grid = model.grid;
    const int N = grid.N;
    const double dt = grid.dt();

    std::vector<double> q(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        q[k] = model.A[k] * model.A[k] - model.mu * model.l11[k];
    }

    VolterraSolution sol{TriKernel(grid), ScalarPath(grid)};
    TriKernel& G = sol.gamma;

    // Column j depends on columns < j of every row plus the completed row j,
    // so within a column the sub-diagonal entries are mutually independent.
    std::vector<double> b(static_cast<std::size_t>(N), 0.0);  // weighted row-j integrand
    for (int j = 0; j <= N; ++j) {
        const double tj = grid.node(j);
        const double Kjj = cov.cov(tj, tj);
        require_finite(Kjj, "covariance K(t,t)");
        if (Kjj < -kDiagTol) {
            throw ValidationError("BadCovariance",
                                  "K(t,t) = " + std::to_string(Kjj) + " < 0 at t = " + std::to_string(tj));
        }

        // Diagonal entry first: with x = gamma(j,j) the trapezoid rule gives
        //   (dt/2) q_j x^2 + x - (K(j,j) - S) = 0,  S the completed part of the
        // memory integral; take the root that tends to K - S as dt q_j -> 0.
        const double* rowj = G.row(j);
        double S = 0.0;
        for (int r = 0; r < j; ++r) {
            const double w = (r == 0) ? 0.5 * dt : dt;
            S += w * q[static_cast<std::size_t>(r)] * rowj[r] * rowj[r];
        }
        const double R = Kjj - S;
        const double c = 0.5 * dt * q[static_cast<std::size_t>(j)];
        const double disc = 1.0 + 4.0 * c * R;
        if (!(disc >= 0.0)) {
            throw NumericError("NonFinite",
                               "Riccati-Volterra diagonal step has no real solution at t = " +
                                   std::to_string(tj) + " (condition (C_mu) failure)");
        }
        const double diag = 2.0 * R / (1.0 + std::sqrt(disc));
        require_finite(diag, "gamma(t,t)");
        if (diag < -kDiagTol) {
            throw ConditionError("NegativeDiagonal",
                                 "gamma(t,t) = " + std::to_string(diag) + " < 0 at t = " +
                                     std::to_string(tj) + " (condition (C_mu) failure)");
        }
        G.at(j, j) = diag;
        sol.diag[j] = diag;

        if (j == N) break;

        for (int r = 0; r < j; ++r) {
            const double w = (r == 0) ? 0.5 * dt : dt;
            b[static_cast<std::size_t>(r)] = w * q[static_cast<std::size_t>(r)] * rowj[r];
        }
        const double denom = 1.0 + 0.5 * dt * q[static_cast<std::size_t>(j)] * diag;

#pragma omp parallel for schedule(static) if (Parallel)
        for (int i = j + 1; i <= N; ++i) {
            const double* rowi = G.row(i);
            double acc = 0.0;
            for (int r = 0; r < j; ++r) acc += rowi[r] * b[static_cast<std::size_t>(r)];
            const double Kij = cov.cov(grid.node(i), tj);
            G.at(i, j) = (Kij - acc) / denom;
        }
        for (int i = j + 1; i <= N; ++i) require_finite(G.at(i, j), "gamma(t,s)");
    }
    return sol;
}

std::vector<double> rs_feedback_gain(const ValidatedModel& model, const ScalarPath& diag) {
    const int N = model.grid.N;
    std::vector<double> c(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double margin = 1.0 - model.mu * diag[i] * model.l11[k];
        if (margin <= 0.0) {
            throw ConditionError("ConditionViolated",
                                 "1 - mu gamma(t,t) Lambda_11 = " + std::to_string(margin) +
                                     " is not positive at t = " + std::to_string(model.grid.node(i)));
        }
        const double denom = 1.0 - model.mu * diag[i] * model.detL[k] / model.l22[k];
        if (denom <= 0.0) {
            throw ConditionError("ConditionViolated",
                                 "1 - mu gamma(t,t) det(Lambda)/L22 = " + std::to_string(denom) +
                                     " is not positive at t = " + std::to_string(model.grid.node(i)));
        }
        c[k] = -(model.l12[k] / model.l22[k]) / denom;
    }
    return c;
}

}  // namespace

VolterraSolution solve_riccati_volterra(const CovarianceSpec& cov, const ValidatedModel& model) {
    return volterra_fill<true>(cov, model);
}

VolterraSolution solve_riccati_volterra_reference(const CovarianceSpec& cov,
                                                  const ValidatedModel& model) {
    return volterra_fill<false>(cov, model);
}

ScalarPath solve_Z_volterra(const VolterraSolution& sol, const CovarianceSpec& cov,
                            const ValidatedModel& model, const ScalarPath& h,
                            std::span<const double> dY) {
    const TimeGrid& grid = model.grid;
    check_increments(grid, dY);
    if (h.grid != grid) {
        throw ValidationError("GridMismatch", "estimate path h is not on the model grid");
    }
    const int N = grid.N;
    const double dt = grid.dt();
    const double mu = model.mu;

    ScalarPath Z(grid);
    Z[0] = cov.mean(0.0);
    // drive[s] collects the left-point integrand of node s:
    //   mu (L11 Z_s + L12 h_s) dt + A_s dY_s - A_s^2 Z_s dt.
    std::vector<double> drive(static_cast<std::size_t>(N), 0.0);
    for (int i = 1; i <= N; ++i) {
        const int s = i - 1;
        const auto ks = static_cast<std::size_t>(s);
        drive[ks] = mu * (model.l11[ks] * Z[s] + model.l12[ks] * h[s]) * dt +
                    model.A[ks] * (dY[ks] - model.A[ks] * Z[s] * dt);
        const double* row = sol.gamma.row(i);
        double acc = 0.0;
        for (int r = 0; r < i; ++r) acc += row[r] * drive[static_cast<std::size_t>(r)];
        Z[i] = cov.mean(grid.node(i)) + acc;
        require_finite(Z[i], "Volterra state Z");
    }
    return Z;
}

ScalarPath rs_filter_general(const CovarianceSpec& cov, const ValidatedModel& model,
                             std::span<const double> dY, RsDriftForm form) {
    return rs_filter_general(solve_riccati_volterra(cov, model), cov, model, dY, form);
}

ScalarPath rs_filter_general(const VolterraSolution& sol, const CovarianceSpec& cov,
                             const ValidatedModel& model, std::span<const double> dY,
                             RsDriftForm form) {
    const TimeGrid& grid = model.grid;
    check_increments(grid, dY);
    const int N = grid.N;
    const double dt = grid.dt();
    const double mu = model.mu;
    const std::vector<double> c = rs_feedback_gain(model, sol.diag);

    ScalarPath Z(grid);
    Z[0] = cov.mean(0.0);
    std::vector<double> drive(static_cast<std::size_t>(N), 0.0);
    for (int i = 1; i <= N; ++i) {
        const int s = i - 1;
        const auto ks = static_cast<std::size_t>(s);
        const double g = sol.diag[s];
        const double det = model.detL[ks];
        double factor;  // numerator of the closed-loop drift factor
        switch (form) {
            case RsDriftForm::PrintedProp3: factor = 1.0 - mu * g * model.l11[ks] * det; break;
            case RsDriftForm::PrintedGeneral: factor = 1.0 - model.l11[ks] * g * det; break;
            case RsDriftForm::Substitution: default: factor = 1.0 - mu * g * model.l11[ks]; break;
        }
        const double denom = model.l22[ks] - mu * g * det;
        drive[ks] = mu * det * (factor / denom) * Z[s] * dt +
                    model.A[ks] * (dY[ks] - model.A[ks] * Z[s] * dt);
        const double* row = sol.gamma.row(i);
        double acc = 0.0;
        for (int r = 0; r < i; ++r) acc += row[r] * drive[static_cast<std::size_t>(r)];
        Z[i] = cov.mean(grid.node(i)) + acc;
        require_finite(Z[i], "RS filter state Z");
    }

    ScalarPath h(grid);
    for (int i = 0; i <= N; ++i) h[i] = c[static_cast<std::size_t>(i)] * Z[i];
    return h;
}

}  // namespace riskfilt
