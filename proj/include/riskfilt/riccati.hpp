#ifndef RISKFILT_RICCATI_HPP
#define RISKFILT_RICCATI_HPP

#include <optional>
#include <string>
#include <vector>

#include "riskfilt/model.hpp"

namespace riskfilt {

/// Node values beyond this magnitude count as a blow-up of the Riccati flow.
inline constexpr double kBlowupCap = 1e8;
/// Strict inequalities in the solvability conditions are required to hold
/// with this margin.
inline constexpr double kStrictMargin = 1e-10;

/// Filtering-error variance path. When the forward flow diverges before T the
/// path is truncated (NaN past the divergence node) and `blowup` holds the
/// first node time at which the cap was exceeded.
struct RiccatiSolution {
    ScalarPath gammaXX;
    std::optional<double> blowup;
};

/// Backward solution Gamma(T, .) together with the linearization pair,
/// Gamma = phi2 / phi1, phi1(T) = 1, phi2(T) = 0.
struct BackwardSolution {
    ScalarPath Gamma;
    ScalarPath phi1;
    ScalarPath phi2;
};

enum class ConditionId { Cmu, CmuStar, CmuStarStar };

struct ConditionReport {
    ConditionId id;
    bool satisfied = false;
    std::string witness;  // first violated node and quantity; empty when satisfied
};

const char* condition_name(ConditionId id);

/// Forward risk-modified Riccati equation
///   dg/dt = 2 a g + 1 - g^2 [A^2 - mu Lambda_11],  g(0) = 0.
RiccatiSolution solve_forward_gamma(const ValidatedModel& model);

/// Same flow with an explicit risk parameter (mu = 0 gives the Kalman-Bucy
/// error variance).
RiccatiSolution solve_forward_gamma(const ValidatedModel& model, double mu);

/// Backward Riccati equation for Gamma(T, .),
///   dG/dt = -det/L22 - 2 (a + mu g det/L22) G - mu G^2 g^2 [A^2 - mu L12^2/L22],
/// G(T,T) = 0, integrated in reversed time with the same 4th-order scheme.
/// phi1/phi2 are cross-filled from the linearized companion system.
BackwardSolution solve_backward_Gamma(const ValidatedModel& model, const ScalarPath& gammaXX);

/// Linearization route: Gamma = phi2 / phi1 where
///   phi1' = p phi1 + r phi2,   phi2' = -q phi1 - p phi2,
/// with q = det/L22, p = a + mu g det/L22, r = mu g^2 [A^2 - mu L12^2/L22].
BackwardSolution solve_backward_linearized(const ValidatedModel& model, const ScalarPath& gammaXX);

/// Numeric evaluation of the three solvability conditions for this model
/// (and terminal matrix M for the first one). Failures are reported with a
/// witness; nothing is thrown.
std::vector<ConditionReport> check_conditions(const ValidatedModel& model, const SymMat2& M);

}  // namespace riskfilt

#endif
