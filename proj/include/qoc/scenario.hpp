#pragma once

#include "qoc/types.hpp"

#include <functional>
#include <vector>

namespace qoc {

/// One covariate profile x+ with its population probability.
struct Profile {
    Vector x;
    double p = 1.0;
};

enum class OutcomeModel { bernoulli_arms, logistic };

/// Simulation truth: the outcome-generating parameters and the covariate
/// profile distribution. For bernoulli_arms the parameters are per-arm
/// response probabilities; for logistic they are log-odds coefficients
/// combined with design_row(x+, arm).
struct Scenario {
    OutcomeModel kind = OutcomeModel::bernoulli_arms;
    Vector outcome_params;
    std::vector<Profile> profiles;  // probabilities sum to 1; empty means a single point profile
    std::function<Vector(const Vector& xplus, int arm)> design_row;
    int arms = 1;

    double response_prob(const Vector& xplus, int arm) const;
    void validate() const;
};

/// The data-analysis model: Bernoulli arms (one probability per arm) or a
/// logistic regression over a declared sub-profile of the scenario
/// covariates.
struct AnalysisModel {
    OutcomeModel kind = OutcomeModel::bernoulli_arms;
    int dim = 1;
    int arms = 1;
    std::vector<int> kept_covariates;  // indices of x+ visible to the analysis
    std::function<Vector(const Vector& x, int arm)> design_row;  // logistic only

    Vector analysis_covariates(const Vector& xplus) const;
};

/// Per-profile arm assignment probabilities and the stage sample size.
struct Allocation {
    std::vector<Vector> rho;  // one entry per profile, or a single shared entry
    double n = 1.0;

    static Allocation shared(Vector arm_probs, double n = 1.0);
    const Vector& arm_probs(std::size_t profile_index) const;
};

/// theta*, per-observation expected curvature, and asymptotic MLE variance.
struct AsymptoticTriple {
    Vector theta_star;
    Matrix j_star;
    Matrix v_star;
};

/// One (profile, arm) cell of the exact expectation: weight p_x * rho_k,
/// scenario response probability, and the analysis design row.
struct Cell {
    double weight = 0.0;
    double q = 0.0;
    Vector row;
    int arm = 0;
    int profile = 0;
};

std::vector<Cell> make_cells(const Scenario& scenario, const AnalysisModel& model,
                             const Allocation& alloc);

}  // namespace qoc
