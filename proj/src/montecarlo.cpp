#include "riskfilt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riskfilt/cameron_martin.hpp"
#include "riskfilt/rng.hpp"

namespace riskfilt {

namespace {

constexpr long kBlock = 2048;

void neumaier_add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
    } else {
        comp += (x - t) + sum;
    }
    sum = t;
}

}  // namespace

void RunningMeanVar::add(double x) {
    if (n_ == 0) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    ++n_;
    const double d = x - mean();
    neumaier_add(mean_, mean_c_, d / static_cast<double>(n_));
    neumaier_add(m2_, m2_c_, d * (x - mean()));
}

double RunningMeanVar::variance() const {
    return n_ > 1 ? (m2_ + m2_c_) / static_cast<double>(n_ - 1) : 0.0;
}

McEstimate RunningMeanVar::estimate() const {
    McEstimate e;
    e.n = n_;
    e.mean = mean();
    const double sd = std::sqrt(variance());
    e.stderr = n_ > 0 ? sd / std::sqrt(static_cast<double>(n_)) : 0.0;
    e.min = min_;
    e.max = max_;
    e.tail_ratio = sd > 0.0 ? std::max(std::abs(min_ - e.mean), std::abs(max_ - e.mean)) / sd : 0.0;
    return e;
}

PathBundle simulate_bundle(const ValidatedModel& model, std::uint64_t seed, std::uint64_t k) {
    const TimeGrid& grid = model.grid;
    const int N = grid.N;
    const double dt = grid.dt();
    const double sdt = std::sqrt(dt);

    PathBundle b;
    b.seed = seed;
    b.index = k;
    b.dB.resize(static_cast<std::size_t>(N));
    b.dBt.resize(static_cast<std::size_t>(N));
    CounterRng rng(seed, k);
    for (int i = 0; i < N; ++i) {
        b.dB[static_cast<std::size_t>(i)] = sdt * rng.next_normal();
        b.dBt[static_cast<std::size_t>(i)] = sdt * rng.next_normal();
    }
    return bundle_from_increments(model, std::move(b.dB), std::move(b.dBt));
}

PathBundle bundle_from_increments(const ValidatedModel& model, std::vector<double> dB,
                                  std::vector<double> dBt) {
    const TimeGrid& grid = model.grid;
    const int N = grid.N;
    if (static_cast<int>(dB.size()) != N || static_cast<int>(dBt.size()) != N) {
        throw ValidationError("BadIncrements", "expected one noise increment per grid step");
    }
    const double dt = grid.dt();
    PathBundle b;
    b.dB = std::move(dB);
    b.dBt = std::move(dBt);
    b.X = ScalarPath(grid);
    b.Y = ScalarPath(grid);
    for (int i = 0; i < N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        b.X[i + 1] = b.X[i] + model.a[k] * b.X[i] * dt + b.dB[k];
        b.Y[i + 1] = b.Y[i] + model.A[k] * b.X[i] * dt + b.dBt[k];
    }
    return b;
}

void simulate_paths(const ValidatedModel& model, long n, std::uint64_t seed,
                    const std::function<void(const PathBundle&)>& sink) {
    for (long k = 0; k < n; ++k) {
        sink(simulate_bundle(model, seed, static_cast<std::uint64_t>(k)));
    }
}

std::vector<double> observation_increments(const ValidatedModel& model, const PathBundle& bundle) {
    const TimeGrid& grid = model.grid;
    const double dt = grid.dt();
    std::vector<double> dY(static_cast<std::size_t>(grid.N));
    for (int i = 0; i < grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        dY[k] = model.A[k] * bundle.X[i] * dt + bundle.dBt[k];
    }
    return dY;
}

CostSample path_cost(const ValidatedModel& model, const ScalarPath& X, const ScalarPath& h) {
    const TimeGrid& grid = model.grid;
    if (X.grid != grid || h.grid != grid) {
        throw ValidationError("GridMismatch", "X and h must live on the model grid");
    }
    const double dt = grid.dt();
    double acc = 0.0;
    auto quad = [&](int i) {
        const auto k = static_cast<std::size_t>(i);
        return model.l11[k] * X[i] * X[i] + 2.0 * model.l12[k] * X[i] * h[i] +
               model.l22[k] * h[i] * h[i];
    };
    double prev = quad(0);
    for (int i = 1; i <= grid.N; ++i) {
        const double cur = quad(i);
        acc += 0.5 * (prev + cur) * dt;
        prev = cur;
    }
    CostSample c;
    c.logmag = 0.5 * model.mu * acc;
    c.value = model.mu * std::exp(c.logmag);
    require_finite(c.value, "path cost");
    return c;
}

namespace {

/// Runs per-path work for k = 0..n-1 in blocks: `work(k, out_row)` fills
/// `width` doubles per path (parallel inside a block), `fold(k, row)` consumes
/// them serially in path order.
template <class Work, class Fold>
void blocked_path_loop(long n, int width, Work work, Fold fold) {
    std::vector<double> buf(static_cast<std::size_t>(std::min(n, kBlock)) * width);
    std::string error;
    for (long start = 0; start < n; start += kBlock) {
        const long end = std::min(n, start + kBlock);
#pragma omp parallel for schedule(dynamic, 16)
        for (long k = start; k < end; ++k) {
            double* row = buf.data() + static_cast<std::size_t>(k - start) * width;
            try {
                work(k, row);
            } catch (const std::exception& e) {
#pragma omp critical
                if (error.empty()) error = e.what();
                for (int s = 0; s < width; ++s) row[s] = std::numeric_limits<double>::quiet_NaN();
            }
        }
        if (!error.empty()) {
            throw NumericError("NonFinite", "Monte Carlo path failed: " + error);
        }
        for (long k = start; k < end; ++k) {
            fold(k, std::span<const double>(buf.data() + static_cast<std::size_t>(k - start) * width,
                                            static_cast<std::size_t>(width)));
        }
    }
}

}  // namespace

McCompareResult mc_compare(const ValidatedModel& model,
                           const std::vector<std::pair<std::string, FilterGains>>& strategies,
                           long n, std::uint64_t seed,
                           const std::function<void(long, std::span<const double>)>& per_path) {
    if (n < 1) {
        throw ValidationError("BadCount", "Monte Carlo path count must be >= 1");
    }
    const int m = static_cast<int>(strategies.size());
    std::vector<RunningMeanVar> stats(static_cast<std::size_t>(m));
    std::vector<RunningMeanVar> pair_stats(static_cast<std::size_t>(m) * m);

    blocked_path_loop(
        n, m,
        [&](long k, double* row) {
            const PathBundle b = simulate_bundle(model, seed, static_cast<std::uint64_t>(k));
            const std::vector<double> dY = observation_increments(model, b);
            for (int s = 0; s < m; ++s) {
                const FilterRun run = apply_filter(strategies[static_cast<std::size_t>(s)].second, dY);
                row[s] = path_cost(model, b.X, run.h).value;
            }
        },
        [&](long k, std::span<const double> row) {
            for (int s = 0; s < m; ++s) stats[static_cast<std::size_t>(s)].add(row[static_cast<std::size_t>(s)]);
            for (int a = 0; a < m; ++a) {
                for (int b2 = a + 1; b2 < m; ++b2) {
                    pair_stats[static_cast<std::size_t>(a) * m + b2].add(
                        row[static_cast<std::size_t>(a)] - row[static_cast<std::size_t>(b2)]);
                }
            }
            if (per_path) per_path(k, row);
        });

    McCompareResult out;
    out.n = n;
    out.seed = seed;
    for (int s = 0; s < m; ++s) {
        out.strategies.push_back({strategies[static_cast<std::size_t>(s)].first,
                                  stats[static_cast<std::size_t>(s)].estimate()});
    }
    for (int a = 0; a < m; ++a) {
        for (int b2 = a + 1; b2 < m; ++b2) {
            out.pairs.push_back({strategies[static_cast<std::size_t>(a)].first,
                                 strategies[static_cast<std::size_t>(b2)].first,
                                 pair_stats[static_cast<std::size_t>(a) * m + b2].estimate()});
        }
    }
    return out;
}

CmVerifyResult mc_verify_cameron_martin(const ValidatedModel& model, long n, std::uint64_t seed,
                                        const SymMat2& M, double g) {
    if (n < 1) {
        throw ValidationError("BadCount", "Monte Carlo path count must be >= 1");
    }
    const FilterGains rn = risk_neutral_gains(model);
    const double T = model.grid.T;

    RunningMeanVar lhs_stat, rhs_stat, diff_stat;
    blocked_path_loop(
        n, 2,
        [&](long k, double* row) {
            const PathBundle b = simulate_bundle(model, seed, static_cast<std::uint64_t>(k));
            const std::vector<double> dY = observation_increments(model, b);
            const FilterRun run = apply_filter(rn, dY);
            const CostSample integral = path_cost(model, b.X, run.h);
            const double XT = b.X.back();
            const double terminal =
                0.5 * model.mu * (M.l11 * XT * XT + 2.0 * M.l12 * XT * g + M.l22 * g * g);
            row[0] = model.mu * std::exp(terminal + integral.logmag);
            row[1] = conditional_laplace_rhs(model, M, run.h, g, dY, T);
        },
        [&](long, std::span<const double> row) {
            lhs_stat.add(row[0]);
            rhs_stat.add(row[1]);
            diff_stat.add(row[0] - row[1]);
        });

    CmVerifyResult out;
    out.lhs = lhs_stat.estimate();
    out.rhs = rhs_stat.estimate();
    out.diff_mean = diff_stat.estimate().mean;
    out.diff_stderr = diff_stat.estimate().stderr;
    out.pooled_stderr = std::sqrt(out.lhs.stderr * out.lhs.stderr + out.rhs.stderr * out.rhs.stderr);
    out.n = n;
    out.seed = seed;
    return out;
}

}  // namespace riskfilt
