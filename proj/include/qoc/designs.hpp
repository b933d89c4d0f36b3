#pragma once

#include "qoc/mvn.hpp"
#include "qoc/scenario.hpp"
#include "qoc/types.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace qoc {

struct SingleArmProtocol {
    int n = 50;
    double reference_rate = 0.4;
    double decision_threshold = 0.9;
};

struct BetaPriorSpec {
    double alpha = 1.0;
    double beta = 1.0;
    bool uniform() const { return alpha == 1.0 && beta == 1.0; }
    double mean() const { return alpha / (alpha + beta); }
    double variance() const {
        const double s = alpha + beta;
        return alpha * beta / (s * s * (s + 1.0));
    }
};

struct TwoArmProtocol {
    int n0 = 50;
    int n1 = 50;
    BetaPriorSpec prior0, prior1;
    double decision_threshold = 0.9;
    // Multistage configuration; empty stage_sizes means a single stage.
    std::vector<std::pair<int, int>> stage_sizes;        // (n0_s, n1_s) per stage
    std::vector<double> futility_thresholds;             // lambda_1 .. lambda_{S-1}
    int stages() const { return stage_sizes.empty() ? 1 : static_cast<int>(stage_sizes.size()); }
};

struct ExternalDataProtocol {
    int n_trial = 182;
    std::vector<int> ia_schedule{36, 72, 108, 144};  // cumulative enrollment at each IA
    int ratio_treatment = 2;
    int ratio_control = 1;
    int n_external = 500;
    double prior_variance = 10.0;   // IA-model prior N(0, prior_variance * I)
    double futility_zeta = 0.05;
    double alpha = 0.025;           // one-sided test level
    int predictive_draws = 1000;    // M
};

/// Scenario for the external-data design: logistic outcome model over
/// (1, x1, x2, x3, treatment) with separate trial and external covariate
/// populations. x3 is hidden from the analysis.
struct ExternalScenario {
    std::string id;
    Vector omega;  // 5 log-odds coefficients
    std::vector<Profile> trial_profiles;
    std::vector<Profile> external_profiles;
};

struct BarProtocol {
    int arms = 4;
    int n_total = 160;
    int stage_size = 40;
    double prior_variance = 10.0;  // prior N_12(0, prior_variance * I)
    bool adaptive = true;          // freeze allocation at uniform when false
    int stages() const { return n_total / stage_size; }
};

/// Scenario for the adaptively randomized design: the analysis model of
/// the protocol is also the simulation truth (correct specification).
struct BarScenario {
    std::string id;
    Vector theta;                   // 12 coefficients
    std::vector<Profile> profiles;  // biomarker profiles (x1, x2)
};

struct QRunOptions {
    int threads = 1;
    OrthantOptions orthant;
};

/// Design row of the adaptive design's logistic model, dimension 12:
/// intercept, two biomarker main effects, three treatment effects, and
/// treatment-by-biomarker interactions.
Vector bar_design_row(const Vector& x, int arm);

/// Design row of the external-data IA model: (1, x1, x2, arm).
Vector external_ia_row(const Vector& x, int arm);

OCEstimates q_single_arm_positive_prob(const SingleArmProtocol& protocol, const Scenario& scenario,
                                       std::int64_t replicates, std::uint64_t seed,
                                       const QRunOptions& opts = {});

OCEstimates q_two_arm_power(const TwoArmProtocol& protocol, const Scenario& scenario,
                            std::int64_t replicates, std::uint64_t seed,
                            const QRunOptions& opts = {});

OCEstimates q_multistage_stop_prob(const TwoArmProtocol& protocol, const Scenario& scenario,
                                   std::int64_t replicates, std::uint64_t seed,
                                   const QRunOptions& opts = {});

OCEstimates q_external_data_run(const ExternalDataProtocol& protocol, const ExternalScenario& scenario,
                                std::int64_t replicates, std::uint64_t seed,
                                const QRunOptions& opts = {});

OCEstimates q_bar_run(const BarProtocol& protocol, const BarScenario& scenario,
                      std::int64_t replicates, std::uint64_t seed, const QRunOptions& opts = {});

// Shared helpers between the Q and MC runners.
namespace detail {

/// Cumulative per-arm integer counts for a 2:1-style ratio at each point
/// of the enrollment schedule (control first).
std::vector<std::array<int, 2>> external_arm_schedule(const ExternalDataProtocol& protocol);

double z_statistic_from_rates(double gamma1, double gamma0, double n1, double n0);

std::string bar_oc_name(const char* prefix, int arm, const Vector& x);

double proportion_se(double p_hat, std::int64_t n);

}  // namespace detail

}  // namespace qoc
