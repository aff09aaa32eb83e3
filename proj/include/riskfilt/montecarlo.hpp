#ifndef RISKFILT_MONTECARLO_HPP
#define RISKFILT_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskfilt/filters.hpp"
#include "riskfilt/model.hpp"

namespace riskfilt {

/// One simulated signal/observation pair with its driving increments.
/// Reproducible bit-exactly from (seed, path index, grid, model).
struct PathBundle {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::vector<double> dB;   // signal noise increments, N values
    std::vector<double> dBt;  // observation noise increments, N values
    ScalarPath X;
    ScalarPath Y;
};

/// Exponential-quadratic cost of one path:
///   value = mu exp{ (mu/2) int (X,h) Lambda (X,h)^T ds } = mu exp(logmag).
struct CostSample {
    double value = 0.0;
    double logmag = 0.0;
};

struct McEstimate {
    double mean = 0.0;
    double stderr = 0.0;  // sample standard deviation / sqrt(n)
    long n = 0;
    double min = 0.0;
    double max = 0.0;
    /// Heavy-tail heuristic: largest |sample - mean| over the sample standard
    /// deviation (mean taken at the end of the streaming pass).
    double tail_ratio = 0.0;
};

struct StrategyEstimate {
    std::string name;
    McEstimate est;
};

struct PairedDiff {
    std::string a, b;  // per-path difference cost(a) - cost(b)
    McEstimate est;
};

struct McCompareResult {
    std::vector<StrategyEstimate> strategies;
    std::vector<PairedDiff> pairs;
    long n = 0;
    std::uint64_t seed = 0;
};

/// Streaming mean/variance (Welford update with Neumaier-compensated
/// accumulators). Deterministic for a fixed insertion order.
class RunningMeanVar {
public:
    void add(double x);
    long count() const { return n_; }
    double mean() const { return mean_ + mean_c_; }
    double variance() const;  // unbiased (n - 1)
    McEstimate estimate() const;

private:
    long n_ = 0;
    double mean_ = 0.0, mean_c_ = 0.0;
    double m2_ = 0.0, m2_c_ = 0.0;
    double min_ = 0.0, max_ = 0.0;
};

/// Euler-Maruyama path of the signal/observation pair driven by the
/// counter-based stream (seed, k): draws 2N normals in step order
/// (dB_i then dBt_i).
PathBundle simulate_bundle(const ValidatedModel& model, std::uint64_t seed, std::uint64_t k);

/// Builds the X/Y paths from caller-supplied increments (diagnostic mode;
/// zero increments give X = Y = 0).
PathBundle bundle_from_increments(const ValidatedModel& model, std::vector<double> dB,
                                  std::vector<double> dBt);

/// Emits bundles k = 0..n-1 in order.
void simulate_paths(const ValidatedModel& model, long n, std::uint64_t seed,
                    const std::function<void(const PathBundle&)>& sink);

/// Observation increments dY_i = A_i X_i dt + dBt_i of a bundle.
std::vector<double> observation_increments(const ValidatedModel& model, const PathBundle& bundle);

/// Trapezoid quadrature of the quadratic criterion along one path,
/// accumulated in log space.
CostSample path_cost(const ValidatedModel& model, const ScalarPath& X, const ScalarPath& h);

/// Seeded comparison of filtering strategies under common random numbers:
/// every path's observation record feeds every strategy. Paths are processed
/// in blocks (parallel inside a block), estimates are folded in path order,
/// so results do not depend on the thread count. `per_path`, when set, is
/// called in path order with the strategy costs of each path.
McCompareResult mc_compare(const ValidatedModel& model,
                           const std::vector<std::pair<std::string, FilterGains>>& strategies,
                           long n, std::uint64_t seed,
                           const std::function<void(long, std::span<const double>)>& per_path = {});

struct CmVerifyResult {
    McEstimate lhs;        // mu exp{(mu/2)(X_T,g) M (X_T,g)^T + (mu/2) int (X,h) Lambda}
    McEstimate rhs;        // conditional Laplace-transform formula on the same path
    double diff_mean = 0.0;
    double diff_stderr = 0.0;
    double pooled_stderr = 0.0;  // sqrt(se_lhs^2 + se_rhs^2)
    long n = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo check of the conditional Laplace-transform identity with the
/// risk-neutral strategy as the estimate path and a fixed terminal pair
/// (M, g). Both sides are evaluated on the same simulated paths.
CmVerifyResult mc_verify_cameron_martin(const ValidatedModel& model, long n, std::uint64_t seed,
                                        const SymMat2& M = SymMat2::zero(), double g = 0.0);

}  // namespace riskfilt

#endif
