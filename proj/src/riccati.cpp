#include "riskfilt/riccati.hpp"

#include <cmath>
#include <limits>

#include "riskfilt/detail/ode.hpp"

namespace riskfilt {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct BackwardCoeffs {
    // dGamma/dt = -q - 2 p Gamma - r Gamma^2, all sampled per node.
    std::vector<double> q, p, r;
};

BackwardCoeffs backward_coeffs(const ValidatedModel& m, const ScalarPath& g) {
    const int n = m.grid.N + 1;
    BackwardCoeffs c;
    c.q.resize(n);
    c.p.resize(n);
    c.r.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double dl = m.detL[k] / m.l22[k];
        c.q[k] = dl;
        c.p[k] = m.a[k] + m.mu * g[i] * dl;
        c.r[k] = m.mu * g[i] * g[i] * (m.A[k] * m.A[k] - m.mu * m.l12[k] * m.l12[k] / m.l22[k]);
    }
    return c;
}

std::vector<double> reversed(const std::vector<double>& v) {
    return {v.rbegin(), v.rend()};
}

}  // namespace

const char* condition_name(ConditionId id) {
    switch (id) {
        case ConditionId::Cmu: return "Cmu";
        case ConditionId::CmuStar: return "CmuStar";
        case ConditionId::CmuStarStar: default: return "CmuStarStar";
    }
}

RiccatiSolution solve_forward_gamma(const ValidatedModel& model) {
    return solve_forward_gamma(model, model.mu);
}

RiccatiSolution solve_forward_gamma(const ValidatedModel& model, double mu) {
    const TimeGrid& grid = model.grid;
    RiccatiSolution sol{ScalarPath(grid, kNaN), std::nullopt};
    const detail::CoeffSampler a{model.a};
    const detail::CoeffSampler A{model.A};
    const detail::CoeffSampler l11{model.l11};

    detail::rk4_scalar(
        grid, 0.0,
        [&](double g, double /*t*/, detail::Stage st, int step) {
            const double Av = A.at(step, st);
            return 2.0 * a.at(step, st) * g + 1.0 - g * g * (Av * Av - mu * l11.at(step, st));
        },
        [&](int i, double g) {
            if (!std::isfinite(g) || std::abs(g) > kBlowupCap) {
                sol.blowup = grid.node(i);
                return false;
            }
            sol.gammaXX[i] = g;
            return true;
        });
    return sol;
}

BackwardSolution solve_backward_linearized(const ValidatedModel& model, const ScalarPath& gammaXX) {
    const TimeGrid& grid = model.grid;
    if (gammaXX.grid != grid) {
        throw ValidationError("GridMismatch", "gammaXX path is not on the model grid");
    }
    const BackwardCoeffs fwd = backward_coeffs(model, gammaXX);
    const std::vector<double> q = reversed(fwd.q);
    const std::vector<double> p = reversed(fwd.p);
    const std::vector<double> r = reversed(fwd.r);
    const detail::CoeffSampler qs{q}, ps{p}, rs{r};

    BackwardSolution out{ScalarPath(grid), ScalarPath(grid), ScalarPath(grid)};
    // Integrate in reversed time tau = T - t from (phi1, phi2) = (1, 0).
    detail::rk4_pair(
        grid, {1.0, 0.0},
        [&](std::array<double, 2> y, double /*tau*/, detail::Stage st, int step) {
            const double pv = ps.at(step, st);
            return std::array<double, 2>{-(pv * y[0] + rs.at(step, st) * y[1]),
                                         qs.at(step, st) * y[0] + pv * y[1]};
        },
        [&](int i, std::array<double, 2> y) {
            require_finite(y[0], "phi1");
            require_finite(y[1], "phi2");
            const int node = grid.N - i;
            if (y[0] <= 0.0) {
                throw ConditionError("SingularPhi1",
                                     "phi1 crosses zero at t = " + std::to_string(grid.node(node)) +
                                         "; the backward Riccati solution is not bounded");
            }
            out.phi1[node] = y[0];
            out.phi2[node] = y[1];
            out.Gamma[node] = y[1] / y[0];
            return true;
        });
    return out;
}

BackwardSolution solve_backward_Gamma(const ValidatedModel& model, const ScalarPath& gammaXX) {
    const TimeGrid& grid = model.grid;
    if (gammaXX.grid != grid) {
        throw ValidationError("GridMismatch", "gammaXX path is not on the model grid");
    }
    const BackwardCoeffs fwd = backward_coeffs(model, gammaXX);
    const std::vector<double> q = reversed(fwd.q);
    const std::vector<double> p = reversed(fwd.p);
    const std::vector<double> r = reversed(fwd.r);
    const detail::CoeffSampler qs{q}, ps{p}, rs{r};

    // Direct integration of the Riccati equation in reversed time, plus the
    // linearized pair for diagnostics.
    BackwardSolution out = solve_backward_linearized(model, gammaXX);
    detail::rk4_scalar(
        grid, 0.0,
        [&](double G, double /*tau*/, detail::Stage st, int step) {
            return qs.at(step, st) + 2.0 * ps.at(step, st) * G + rs.at(step, st) * G * G;
        },
        [&](int i, double G) {
            const int node = grid.N - i;
            if (!std::isfinite(G) || std::abs(G) > kBlowupCap) {
                throw ConditionError("Blowup", "backward Riccati solution exceeds the cap at t = " +
                                                   std::to_string(grid.node(node)));
            }
            out.Gamma[node] = G;
            return true;
        });
    return out;
}

std::vector<ConditionReport> check_conditions(const ValidatedModel& model, const SymMat2& M) {
    std::vector<ConditionReport> reports;
    const TimeGrid& grid = model.grid;
    const RiccatiSolution fwd = solve_forward_gamma(model);

    auto forward_witness = [&]() -> std::string {
        if (fwd.blowup) {
            return "forward Riccati solution blows up at t = " + std::to_string(*fwd.blowup);
        }
        for (int i = 0; i <= grid.N; ++i) {
            if (fwd.gammaXX[i] < -kStrictMargin) {
                return "gammaXX(" + std::to_string(grid.node(i)) +
                       ") = " + std::to_string(fwd.gammaXX[i]) + " < 0";
            }
        }
        return {};
    };
    const std::string fw = forward_witness();

    // (C_mu): bounded nonnegative forward solution and 1 - mu M11 gammaXX(T) > 0.
    {
        ConditionReport r{ConditionId::Cmu, false, {}};
        if (!fw.empty()) {
            r.witness = fw;
        } else {
            const double margin = 1.0 - model.mu * M.l11 * fwd.gammaXX.back();
            if (margin <= kStrictMargin) {
                r.witness = "1 - mu M11 gammaXX(T) = " + std::to_string(margin) + " is not positive";
            } else {
                r.satisfied = true;
            }
        }
        reports.push_back(std::move(r));
    }

    // (C_mu*): both Riccati solutions exist, bounded and nonnegative.
    {
        ConditionReport r{ConditionId::CmuStar, false, {}};
        if (!fw.empty()) {
            r.witness = fw;
        } else {
            try {
                const BackwardSolution bwd = solve_backward_Gamma(model, fwd.gammaXX);
                r.satisfied = true;
                for (int i = 0; i <= grid.N; ++i) {
                    if (bwd.Gamma[i] < -kStrictMargin) {
                        r.satisfied = false;
                        r.witness = "Gamma(T, " + std::to_string(grid.node(i)) +
                                    ") = " + std::to_string(bwd.Gamma[i]) + " < 0";
                        break;
                    }
                }
            } catch (const Error& e) {
                r.witness = e.what();
            }
        }
        reports.push_back(std::move(r));
    }

    // (C_mu**): forward solution plus 1 - mu gammaXX(t) Lambda_11(t) > 0 on [0, T].
    {
        ConditionReport r{ConditionId::CmuStarStar, false, {}};
        if (!fw.empty()) {
            r.witness = fw;
        } else {
            r.satisfied = true;
            for (int i = 0; i <= grid.N; ++i) {
                const double margin =
                    1.0 - model.mu * fwd.gammaXX[i] * model.l11[static_cast<std::size_t>(i)];
                if (margin <= kStrictMargin) {
                    r.satisfied = false;
                    r.witness = "1 - mu gammaXX Lambda_11 = " + std::to_string(margin) +
                                " is not positive at t = " + std::to_string(grid.node(i));
                    break;
                }
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace riskfilt
