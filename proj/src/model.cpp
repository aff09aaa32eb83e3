#include "riskfilt/model.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "riskfilt/detail/ode.hpp"

namespace riskfilt {

namespace {
constexpr double kDefinitenessTol = 1e-12;

std::string at_node(int i, double t) {
    return " at node " + std::to_string(i) + " (t = " + std::to_string(t) + ")";
}
}  // namespace

ValidatedModel validate_model(const ModelSpec& spec, const TimeGrid& grid) {
    check_grid(grid);
    if (!std::isfinite(spec.mu)) {
        throw ValidationError("NonFinite", "risk parameter mu is not finite");
    }
    if (!(spec.T > 0.0) || !std::isfinite(spec.T)) {
        throw ValidationError("NonFinite", "horizon T must be finite and positive");
    }

    ValidatedModel m;
    m.grid = grid;
    m.mu = spec.mu;
    const int n = grid.N + 1;
    m.a.resize(n);
    m.A.resize(n);
    m.l11.resize(n);
    m.l12.resize(n);
    m.l22.resize(n);
    m.detL.resize(n);

    for (int i = 0; i < n; ++i) {
        const double t = grid.node(i);
        const double a = spec.a(t);
        const double A = spec.A(t);
        SymMat2 L = spec.Lambda(t);
        if (!std::isfinite(a) || !std::isfinite(A) || !std::isfinite(L.l11) ||
            !std::isfinite(L.l12) || !std::isfinite(L.l22)) {
            throw ValidationError("NonFinite", "coefficient is not finite" + at_node(i, t));
        }
        // Nonnegative definiteness via l11 >= 0 and det >= 0, with a small
        // tolerance for float drift in user-supplied paths; values inside the
        // tolerance band are clamped to the exact bound.
        if (L.l11 < -kDefinitenessTol) {
            throw ValidationError("NonPositiveDefinite",
                                  "Lambda_11 = " + std::to_string(L.l11) + " < 0" + at_node(i, t));
        }
        L.l11 = std::max(L.l11, 0.0);
        double det = L.det();
        if (det < -kDefinitenessTol) {
            throw ValidationError("NonPositiveDefinite",
                                  "det(Lambda) = " + std::to_string(det) + " < 0" + at_node(i, t));
        }
        det = std::max(det, 0.0);
        // Lambda_22 != 0 combined with nonnegative definiteness forces Lambda_22 > 0.
        if (L.l22 <= 0.0) {
            throw ValidationError("ZeroLambda22",
                                  "Lambda_22 = " + std::to_string(L.l22) + " <= 0" + at_node(i, t));
        }
        m.a[static_cast<std::size_t>(i)] = a;
        m.A[static_cast<std::size_t>(i)] = A;
        m.l11[static_cast<std::size_t>(i)] = L.l11;
        m.l12[static_cast<std::size_t>(i)] = L.l12;
        m.l22[static_cast<std::size_t>(i)] = L.l22;
        m.detL[static_cast<std::size_t>(i)] = det;
    }
    return m;
}

ScalarPath transition_pi(const ValidatedModel& model) {
    const TimeGrid& grid = model.grid;
    ScalarPath pi(grid);
    pi[0] = 1.0;
    const detail::CoeffSampler a{model.a};
    detail::rk4_scalar(
        grid, 1.0,
        [&](double y, double /*t*/, detail::Stage st, int step) { return a.at(step, st) * y; },
        [&](int i, double y) {
            require_finite(y, "transition Pi");
            pi[i] = y;
            return true;
        });
    return pi;
}

CovarianceSpec ou_covariance(const ValidatedModel& model) {
    const TimeGrid grid = model.grid;
    auto pi = std::make_shared<ScalarPath>(transition_pi(model));
    // Cumulative trapezoid of Pi^{-2}.
    auto cum = std::make_shared<std::vector<double>>(static_cast<std::size_t>(grid.N) + 1, 0.0);
    const double dt = grid.dt();
    for (int i = 0; i < grid.N; ++i) {
        const double f0 = 1.0 / ((*pi)[i] * (*pi)[i]);
        const double f1 = 1.0 / ((*pi)[i + 1] * (*pi)[i + 1]);
        (*cum)[static_cast<std::size_t>(i) + 1] =
            (*cum)[static_cast<std::size_t>(i)] + 0.5 * (f0 + f1) * dt;
        require_finite((*cum)[static_cast<std::size_t>(i) + 1], "OU covariance integral");
    }

    CovarianceSpec cov;
    cov.mean = [](double) { return 0.0; };
    cov.cov = [grid, pi, cum](double t, double s) {
        const int i = grid.index_of(t);
        const int j = grid.index_of(s);
        const int k = std::min(i, j);
        return (*pi)[i] * (*pi)[j] * (*cum)[static_cast<std::size_t>(k)];
    };
    return cov;
}

}  // namespace riskfilt
