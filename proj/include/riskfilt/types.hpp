#ifndef RISKFILT_TYPES_HPP
#define RISKFILT_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "riskfilt/errors.hpp"

namespace riskfilt {

/// Uniform grid on [0, T] with N steps and N+1 nodes t_i = i * dt.
struct TimeGrid {
    double T = 1.0;
    int N = 2000;

    double dt() const { return T / N; }
    double node(int i) const { return i * dt(); }

    /// Index of a node time; throws if t is not a grid node (tolerance dt/4).
    int index_of(double t) const {
        const double x = t / dt();
        const int i = static_cast<int>(std::lround(x));
        if (i < 0 || i > N || std::abs(x - i) > 0.25) {
            throw ValidationError("OffGrid", "time " + std::to_string(t) + " is not a grid node");
        }
        return i;
    }

    bool operator==(const TimeGrid&) const = default;
};

inline void check_grid(const TimeGrid& g) {
    if (!(g.T > 0.0) || !std::isfinite(g.T)) {
        throw ValidationError("BadGrid", "grid horizon T must be finite and positive");
    }
    if (g.N < 1) {
        throw ValidationError("BadGrid", "grid step count N must be >= 1");
    }
}

/// One real value per grid node (N+1 values).
struct ScalarPath {
    TimeGrid grid;
    std::vector<double> values;

    ScalarPath() = default;
    explicit ScalarPath(const TimeGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.N) + 1, fill) {}

    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    int nodes() const { return static_cast<int>(values.size()); }

    double back() const { return values.back(); }
};

/// Lower-triangular two-time array K[i][j], 0 <= j <= i <= N, packed row-major.
class TriKernel {
public:
    TriKernel() = default;
    explicit TriKernel(const TimeGrid& g)
        : grid_(g), data_(packed_size(g.N), 0.0) {}

    static std::size_t packed_size(int N) {
        const std::size_t n = static_cast<std::size_t>(N) + 1;
        return n * (n + 1) / 2;
    }

    const TimeGrid& grid() const { return grid_; }

    double& at(int i, int j) { return data_[offset(i, j)]; }
    double at(int i, int j) const { return data_[offset(i, j)]; }

    /// Pointer to the start of row i (entries j = 0..i).
    double* row(int i) { return data_.data() + row_offset(i); }
    const double* row(int i) const { return data_.data() + row_offset(i); }

    const std::vector<double>& data() const { return data_; }

private:
    static std::size_t row_offset(int i) {
        const std::size_t k = static_cast<std::size_t>(i);
        return k * (k + 1) / 2;
    }
    std::size_t offset(int i, int j) const { return row_offset(i) + static_cast<std::size_t>(j); }

    TimeGrid grid_;
    std::vector<double> data_;
};

/// Trapezoidal quadrature of node values f over [0, t_upto].
inline double trapezoid(const std::vector<double>& f, double dt, int upto) {
    double acc = 0.0;
    for (int i = 0; i < upto; ++i) acc += 0.5 * (f[static_cast<std::size_t>(i)] + f[static_cast<std::size_t>(i) + 1]);
    return acc * dt;
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NumericError("NonFinite", std::string(what) + " is not finite");
    }
}

}  // namespace riskfilt

#endif
