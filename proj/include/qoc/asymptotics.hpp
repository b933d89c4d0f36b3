#pragma once

#include "qoc/scenario.hpp"

namespace qoc {

/// KL projection theta* of the scenario onto the analysis model: the root
/// of the population score equation, solved by damped Newton iteration
/// (score-norm tolerance 1e-10, at most 200 iterations). Coordinates with
/// no design support stay at the starting value.
Vector kl_projection(const Scenario& scenario, const AnalysisModel& model, const Allocation& alloc);

/// Per-observation expected negative Hessian J(theta) of the analysis
/// log-likelihood, as an exact sum over (profile, arm) cells.
Matrix expected_curvature(const Vector& theta, const Scenario& scenario, const AnalysisModel& model,
                          const Allocation& alloc);

/// Per-observation expected score outer product I(theta) under the
/// scenario's outcome law.
Matrix expected_score_outer(const Vector& theta, const Scenario& scenario, const AnalysisModel& model,
                            const Allocation& alloc);

/// E[score_a score_b^T] for two analysis models fitted to the same data.
Matrix expected_score_cross(const Vector& theta_a, const AnalysisModel& model_a,
                            const Vector& theta_b, const AnalysisModel& model_b,
                            const Scenario& scenario, const Allocation& alloc);

/// Misspecification-robust MLE variance J^-1 I J^-1, symmetrized.
Matrix sandwich_variance(const Matrix& j, const Matrix& i);

/// (theta*, J*, V*) in one shot. Structurally unidentified coordinates
/// (zero design column over all supported cells) get zero rows/columns in
/// V* and keep theta* at the starting value.
AsymptoticTriple asymptotic_triple(const Scenario& scenario, const AnalysisModel& model,
                                   const Allocation& alloc);

inline double inverse_logit(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

}  // namespace qoc
