#include "qoc/designs.hpp"

#include "qoc/asymptotics.hpp"
#include "qoc/parallel.hpp"
#include "qoc/qlik.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qoc {

namespace detail {

double proportion_se(double p_hat, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("proportion_se: no replicates");
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

double z_statistic_from_rates(double gamma1, double gamma0, double n1, double n0) {
    const double pooled = (n1 * gamma1 + n0 * gamma0) / (n1 + n0);
    if (pooled <= 0.0 || pooled >= 1.0) return 0.0;
    return (gamma1 - gamma0) / std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n0));
}

std::string bar_oc_name(const char* prefix, int arm, const Vector& x) {
    std::ostringstream os;
    os << prefix << "_k" << arm << "_x";
    for (Eigen::Index i = 0; i < x.size(); ++i) os << static_cast<int>(std::lround(x(i)));
    return os.str();
}

std::vector<std::array<int, 2>> external_arm_schedule(const ExternalDataProtocol& protocol) {
    std::vector<int> cumulative = protocol.ia_schedule;
    cumulative.push_back(protocol.n_trial);
    const double treat_frac = static_cast<double>(protocol.ratio_treatment) /
                              (protocol.ratio_treatment + protocol.ratio_control);
    std::vector<std::array<int, 2>> counts;  // {control, treatment} cumulative
    counts.reserve(cumulative.size());
    for (int total : cumulative) {
        const int treated = static_cast<int>(std::lround(total * treat_frac));
        counts.push_back({total - treated, treated});
    }
    return counts;
}

}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

OCEstimate indicator_estimate(std::string name, const std::vector<std::uint8_t>& hits,
                              double seconds) {
    const auto r = static_cast<std::int64_t>(hits.size());
    const double count = std::accumulate(hits.begin(), hits.end(), 0.0);
    const double p = count / static_cast<double>(r);
    return {std::move(name), p, detail::proportion_se(p, r), r, seconds};
}

GaussianPrior two_arm_prior(const TwoArmProtocol& protocol) {
    if (protocol.prior0.uniform() && protocol.prior1.uniform()) return GaussianPrior::flat_prior();
    // Non-uniform Beta priors enter through a moment-matched Gaussian.
    Vector mean(2);
    mean << protocol.prior0.mean(), protocol.prior1.mean();
    Matrix cov = Matrix::Zero(2, 2);
    cov(0, 0) = protocol.prior0.variance();
    cov(1, 1) = protocol.prior1.variance();
    return GaussianPrior::of(std::move(mean), std::move(cov));
}

}  // namespace

Vector external_ia_row(const Vector& x, int arm) {
    Vector row(4);
    row << 1.0, x(0), x(1), arm == 1 ? 1.0 : 0.0;
    return row;
}

Vector bar_design_row(const Vector& x, int arm) {
    Vector row = Vector::Zero(12);
    row(0) = 1.0;
    row(1) = x(0);
    row(2) = x(1);
    if (arm >= 1) {
        row(2 + arm) = 1.0;
        row(5 + arm) = x(0);
        row(8 + arm) = x(1);
    }
    return row;
}

OCEstimates q_single_arm_positive_prob(const SingleArmProtocol& protocol, const Scenario& scenario,
                                       std::int64_t replicates, std::uint64_t seed,
                                       const QRunOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("q_single_arm: replicates must be >= 1");
    scenario.validate();

    AnalysisModel model{OutcomeModel::bernoulli_arms, 1, 1, {}, {}};
    const Allocation alloc = Allocation::shared(Vector::Ones(1), protocol.n);
    const AsymptoticTriple triple = asymptotic_triple(scenario, model, alloc);
    const CenterLaw law(triple.theta_star, triple.v_star / protocol.n);
    const Matrix curvature = protocol.n * triple.j_star;
    const Vector pick = Vector::Ones(1);

    std::vector<std::uint8_t> hits(replicates);
    const auto start = Clock::now();
    parallel_replicates(replicates, opts.threads, [&](std::int64_t r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const QLikelihood lik{sample_center(law, rng), curvature};
        const QPosterior post = posterior_update(lik, GaussianPrior::flat_prior());
        hits[r] = tail_probability(post, pick, 0.0, protocol.reference_rate) >=
                  protocol.decision_threshold;
    });
    return {indicator_estimate("positive_prob", hits, elapsed_seconds(start))};
}

namespace {

struct TwoArmStage {
    CenterLaw law;
    Matrix curvature;
};

TwoArmStage make_two_arm_stage(const Scenario& scenario, int n0, int n1) {
    AnalysisModel model{OutcomeModel::bernoulli_arms, 2, 2, {}, {}};
    const double n = n0 + n1;
    Vector rho(2);
    rho << n0 / n, n1 / n;
    const Allocation alloc = Allocation::shared(rho, n);
    const AsymptoticTriple triple = asymptotic_triple(scenario, model, alloc);
    return {CenterLaw(triple.theta_star, triple.v_star / n), Matrix(n * triple.j_star)};
}

}  // namespace

OCEstimates q_two_arm_power(const TwoArmProtocol& protocol, const Scenario& scenario,
                            std::int64_t replicates, std::uint64_t seed, const QRunOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("q_two_arm: replicates must be >= 1");
    if (protocol.stages() != 1)
        throw std::invalid_argument("q_two_arm_power: single-stage protocol required");
    scenario.validate();

    const TwoArmStage stage = make_two_arm_stage(scenario, protocol.n0, protocol.n1);
    const GaussianPrior prior = two_arm_prior(protocol);
    Vector contrast(2);
    contrast << -1.0, 1.0;

    std::vector<std::uint8_t> hits(replicates);
    const auto start = Clock::now();
    parallel_replicates(replicates, opts.threads, [&](std::int64_t r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const QLikelihood lik{sample_center(stage.law, rng), stage.curvature};
        const QPosterior post = posterior_update(lik, prior);
        hits[r] = tail_probability(post, contrast, 0.0, 0.0) > protocol.decision_threshold;
    });
    return {indicator_estimate("positive_prob", hits, elapsed_seconds(start))};
}

OCEstimates q_multistage_stop_prob(const TwoArmProtocol& protocol, const Scenario& scenario,
                                   std::int64_t replicates, std::uint64_t seed,
                                   const QRunOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("q_multistage: replicates must be >= 1");
    const int stages = protocol.stages();
    if (stages < 2) throw std::invalid_argument("q_multistage_stop_prob: need at least two stages");
    if (static_cast<int>(protocol.futility_thresholds.size()) != stages - 1)
        throw std::invalid_argument("q_multistage_stop_prob: need one futility threshold per IA");
    scenario.validate();

    std::vector<TwoArmStage> stage_laws;
    stage_laws.reserve(stages);
    for (const auto& [n0, n1] : protocol.stage_sizes)
        stage_laws.push_back(make_two_arm_stage(scenario, n0, n1));
    const GaussianPrior prior = two_arm_prior(protocol);
    Vector contrast(2);
    contrast << -1.0, 1.0;

    std::vector<std::uint8_t> stopped(replicates);
    const auto start = Clock::now();
    parallel_replicates(replicates, opts.threads, [&](std::int64_t r) {
        std::optional<QPosterior> post;
        stopped[r] = 0;
        for (int s = 0; s < stages - 1; ++s) {
            RngStream rng(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(s));
            const QLikelihood lik{sample_center(stage_laws[s].law, rng), stage_laws[s].curvature};
            post = post ? posterior_update(lik, *post) : posterior_update(lik, prior);
            const double prob_positive = tail_probability(*post, contrast, 0.0, 0.0) -
                                         tail_probability(*post, contrast, 0.0, 1.0);
            if (prob_positive < protocol.futility_thresholds[s]) {
                stopped[r] = 1;
                break;
            }
        }
    });
    return {indicator_estimate("stop_prob", stopped, elapsed_seconds(start))};
}

}  // namespace qoc
