#ifndef RISKFILT_DETAIL_ODE_HPP
#define RISKFILT_DETAIL_ODE_HPP

#include <array>
#include <vector>

#include "riskfilt/types.hpp"

namespace riskfilt::detail {

enum class Stage { Left, Mid, Right };

/// Reads a node-sampled coefficient path at RK4 stage points; the midpoint
/// value is the linear interpolation of the adjacent nodes.
struct CoeffSampler {
    const std::vector<double>& v;

    double at(int step, Stage st) const {
        const auto i = static_cast<std::size_t>(step);
        switch (st) {
            case Stage::Left: return v[i];
            case Stage::Mid: return 0.5 * (v[i] + v[i + 1]);
            case Stage::Right: default: return v[i + 1];
        }
    }
};

/// Classical fixed-step 4th-order Runge-Kutta sweep over the grid.
/// rhs(y, t, stage, step) evaluates the vector field with coefficients taken
/// at the stage point of step [t_i, t_{i+1}]; emit(i, y) receives every node
/// value including node 0 and may stop the sweep by returning false.
template <class Rhs, class Emit>
void rk4_scalar(const TimeGrid& grid, double y0, Rhs rhs, Emit emit) {
    const double dt = grid.dt();
    double y = y0;
    if (!emit(0, y)) return;
    for (int i = 0; i < grid.N; ++i) {
        const double t = grid.node(i);
        const double k1 = rhs(y, t, Stage::Left, i);
        const double k2 = rhs(y + 0.5 * dt * k1, t + 0.5 * dt, Stage::Mid, i);
        const double k3 = rhs(y + 0.5 * dt * k2, t + 0.5 * dt, Stage::Mid, i);
        const double k4 = rhs(y + dt * k3, t + dt, Stage::Right, i);
        y += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        if (!emit(i + 1, y)) return;
    }
}

/// Same sweep for a 2-vector state.
template <class Rhs, class Emit>
void rk4_pair(const TimeGrid& grid, std::array<double, 2> y0, Rhs rhs, Emit emit) {
    const double dt = grid.dt();
    std::array<double, 2> y = y0;
    auto axpy = [](const std::array<double, 2>& a, double c, const std::array<double, 2>& b) {
        return std::array<double, 2>{a[0] + c * b[0], a[1] + c * b[1]};
    };
    if (!emit(0, y)) return;
    for (int i = 0; i < grid.N; ++i) {
        const double t = grid.node(i);
        const auto k1 = rhs(y, t, Stage::Left, i);
        const auto k2 = rhs(axpy(y, 0.5 * dt, k1), t + 0.5 * dt, Stage::Mid, i);
        const auto k3 = rhs(axpy(y, 0.5 * dt, k2), t + 0.5 * dt, Stage::Mid, i);
        const auto k4 = rhs(axpy(y, dt, k3), t + dt, Stage::Right, i);
        y[0] += dt * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0;
        y[1] += dt * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0;
        if (!emit(i + 1, y)) return;
    }
}

}  // namespace riskfilt::detail

#endif
