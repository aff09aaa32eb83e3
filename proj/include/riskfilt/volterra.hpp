#ifndef RISKFILT_VOLTERRA_HPP
#define RISKFILT_VOLTERRA_HPP

#include <span>

#include "riskfilt/model.hpp"

namespace riskfilt {

/// Two-time solution of the Riccati-Volterra equation; diag[i] = gamma[i][i].
struct VolterraSolution {
    TriKernel gamma;
    ScalarPath diag;
};

/// Algebraic form of the closed-loop RS drift factor. Substitution is the
/// form obtained by substituting the RS feedback into the open-loop state
/// equation; the two printed variants are kept for comparison only (all three
/// coincide when det(Lambda) = 1).
enum class RsDriftForm { Substitution, PrintedProp3, PrintedGeneral };

/// Solves gamma(t,s) = K(t,s) - int_0^s gamma(t,r) [A_r^2 - mu L11(r)] gamma(s,r) dr
/// on the lower triangle with trapezoidal quadrature. The current-column
/// unknown is solved in closed form at each node (semi-implicit trapezoid);
/// on the diagonal, where the unknown enters the last quadrature term
/// quadratically, the stable root of the resulting scalar quadratic is taken.
/// Column entries below the diagonal are independent and computed in
/// parallel; results are bit-identical to the sequential order.
VolterraSolution solve_riccati_volterra(const CovarianceSpec& cov, const ValidatedModel& model);

/// Serial twin of solve_riccati_volterra (bit-identical output, kept for
/// testing and benchmarking).
VolterraSolution solve_riccati_volterra_reference(const CovarianceSpec& cov,
                                                  const ValidatedModel& model);

/// Solves the Ito-Volterra state equation
///   Z_t = m_t + int_0^t gamma(t,s) mu [L11 Z_s + L12 h_s] ds
///             + int_0^t gamma(t,s) A_s [dY_s - A_s Z_s ds]
/// by explicit forward recursion with left-point evaluation inside both
/// integrals (Ito convention for the dY integral).
ScalarPath solve_Z_volterra(const VolterraSolution& sol, const CovarianceSpec& cov,
                            const ValidatedModel& model, const ScalarPath& h,
                            std::span<const double> dY);

/// General-covariance RS filter: closes the loop with the RS feedback gain
///   c(s) = -(L12/L22) [1 - mu gamma(s,s) det(Lambda)/L22]^{-1}
/// and returns the estimate path h_t = c(t) Z_t.
ScalarPath rs_filter_general(const CovarianceSpec& cov, const ValidatedModel& model,
                             std::span<const double> dY,
                             RsDriftForm form = RsDriftForm::Substitution);
ScalarPath rs_filter_general(const VolterraSolution& sol, const CovarianceSpec& cov,
                             const ValidatedModel& model, std::span<const double> dY,
                             RsDriftForm form = RsDriftForm::Substitution);

}  // namespace riskfilt

#endif
