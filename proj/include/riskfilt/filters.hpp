#ifndef RISKFILT_FILTERS_HPP
#define RISKFILT_FILTERS_HPP

#include <span>
#include <string>
#include <vector>

#include "riskfilt/model.hpp"
#include "riskfilt/riccati.hpp"

namespace riskfilt {

enum class FilterKind { RiskNeutral, LEG, RS };

const char* filter_kind_name(FilterKind kind);

/// Coefficient paths of a linear filter h_t = c(t) Z_t where Z follows
///   dZ = zdrift Z dt + obsgain dY
/// (the state feedback is already folded into zdrift).
struct FilterGains {
    FilterKind kind = FilterKind::RiskNeutral;
    ScalarPath c;        // feedback gain multiplying Z
    ScalarPath zdrift;   // closed-loop drift coefficient
    ScalarPath obsgain;  // coefficient of dY, A(t) * gammaXX(t)
};

struct KalmanOutput {
    ScalarPath piX;          // conditional mean path pi_t(X)
    std::vector<double> nu;  // innovation increments dnu_i = dY_i - A_i pi_i dt
};

struct FilterRun {
    ScalarPath h;
    ScalarPath Z;
};

/// Kalman-Bucy gains (the mu = 0 reduction): c = -L12/L22, drift a - A^2 g0,
/// observation gain A g0 with g0 the risk-neutral error variance.
FilterGains risk_neutral_gains(const ValidatedModel& model);

/// LEG gains for horizon grid.T:
///   c = -(L12/L22)(1 + mu g Gamma),
///   zdrift = a + mu (g/L22)(det - mu L12^2 g Gamma) - A^2 g,
///   obsgain = A g.
/// Requires (C_mu*); the forward solve can be shared across horizons.
FilterGains leg_gains(const ValidatedModel& model);
FilterGains leg_gains(const ValidatedModel& model, const RiccatiSolution& forward);

/// RS gains (horizon-free):
///   c = -(L12/L22) / (1 - mu g det / L22),
///   zdrift = a + mu g det (1 - mu g L11) / (L22 - mu g det) - A^2 g,
///   obsgain = A g.
/// Requires (C_mu**) and L22 - mu g det > 0 at every node.
FilterGains rs_gains(const ValidatedModel& model);
FilterGains rs_gains(const ValidatedModel& model, const RiccatiSolution& forward);

/// Runs the filter recursion. The observation increment enters at the left
/// node and the state advances by the exact one-step transition of zdrift
/// (trapezoidal log-drift):
///   Z_{i+1} = (Z_i + obsgain_i dY_i) * exp((zdrift_i + zdrift_{i+1}) dt / 2),
/// Z_0 = 0, h_i = c_i Z_i. This makes the run reproducible from the extracted
/// kernel to round-off.
FilterRun apply_filter(const FilterGains& gains, std::span<const double> dY);

/// Kalman-Bucy filter: conditional mean path and innovation increments.
KalmanOutput kalman_filter(const ValidatedModel& model, std::span<const double> dY);

/// Risk-neutral optimal estimate h_t = -(L12/L22) pi_t(X).
ScalarPath risk_neutral_h(const ValidatedModel& model, const KalmanOutput& kal);

/// Impulse-response kernel H(t_i, t_j) = c_i * Phi(i, j) * obsgain_j with
/// Phi(i, j) = exp(L_i - L_j), L the prefix trapezoid integral of zdrift.
/// Consistent with apply_filter on impulse inputs up to round-off.
TriKernel extract_kernel(const FilterGains& gains);
/// Serial twin of extract_kernel (bit-identical output, kept for testing).
TriKernel extract_kernel_reference(const FilterGains& gains);

/// Left-point Ito convolution h_i = sum_{j < i} H(i, j) dY_j.
ScalarPath kernel_convolve(const TriKernel& kernel, std::span<const double> dY);

}  // namespace riskfilt

#endif
