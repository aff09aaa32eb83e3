#ifndef RISKFILT_CAMERON_MARTIN_HPP
#define RISKFILT_CAMERON_MARTIN_HPP

#include <span>

#include "riskfilt/filters.hpp"
#include "riskfilt/model.hpp"

namespace riskfilt {

/// Effective terminal quadratic-form matrix after conditioning,
///   G = (1 - mu M11 g)^{-1} [[M11, M12], [M12, M22 - mu g det(M)]],
/// together with the scalar prefactor (1 - mu M11 g)^{-1/2}.
struct GMatrix {
    SymMat2 value;
    double prefactor = 1.0;
};

/// Requires 1 - mu M11 gammaT > 0 (ConditionViolated otherwise).
GMatrix gain_matrix_G(const SymMat2& M, double mu, double gammaT);

/// Evaluates the conditional Laplace-transform formula for one observation
/// record: the product of the determinant prefactor, the exponential of the
/// deterministic and quadratic-form terms in (Z, g, h), and the stochastic
/// exponential in Z - pi(X) against the innovations. Time integrals use the
/// trapezoid rule; the innovation integral uses left-point Ito sums; the
/// exponent is accumulated in log space and exponentiated once.
double conditional_laplace_rhs(const ValidatedModel& model, const SymMat2& M, const ScalarPath& h,
                               double g, std::span<const double> dY, double upTo);

/// Path-wise evaluator with the model-dependent pieces (Riccati solution,
/// Kalman gains, G matrix, deterministic exponent) resolved once; eval() is
/// then O(N) per observation record and safe to call concurrently.
class ConditionalLaplace {
public:
    ConditionalLaplace(const ValidatedModel& model, const SymMat2& M, double upTo);

    double eval(const ScalarPath& h, double g, std::span<const double> dY) const;

    double gamma_at_horizon() const { return gammaXX_[iT_]; }
    const GMatrix& G() const { return G_; }

private:
    ValidatedModel model_;
    int iT_;
    ScalarPath gammaXX_;
    std::vector<double> exp_drift_;  // one-step factors of the open-loop Z equation
    FilterGains rn_gains_;
    GMatrix G_;
    double det_term_;  // (mu/2) int gammaXX L11 plus log prefactor
};

/// Optimal LEG risk over [0, grid.T]:
///   mu exp{ (mu/2) int gammaXX L11 ds + (mu/2) int Gamma(T,s) A^2 gammaXX^2 ds }.
double optimal_risk(const ValidatedModel& model);

}  // namespace riskfilt

#endif
