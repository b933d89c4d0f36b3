#pragma once

#include "qoc/rng.hpp"
#include "qoc/types.hpp"

#include <span>
#include <utility>

namespace qoc {

/// Gaussian surrogate likelihood with center C and curvature V.
struct QLikelihood {
    Vector center;
    Matrix curvature;
};

struct GaussianPrior {
    bool flat = true;
    Vector mean;
    Matrix covariance;

    static GaussianPrior flat_prior() { return {}; }
    static GaussianPrior of(Vector mean, Matrix covariance) {
        return {false, std::move(mean), std::move(covariance)};
    }
};

/// Gaussian posterior surrogate from a Q-likelihood and a Gaussian prior.
struct QPosterior {
    Vector center;
    Matrix curvature;
};

/// Sampling law of the surrogate center: N(theta*, V*/n). The factor is
/// built once so the law can be shared across replicate threads.
class CenterLaw {
public:
    CenterLaw(Vector mean, Matrix covariance);

    const Vector& mean() const { return mean_; }
    const Matrix& covariance() const { return covariance_; }
    const Matrix& factor() const { return factor_; }

private:
    Vector mean_;
    Matrix covariance_;
    Matrix factor_;  // factor * factor^T == covariance
};

Vector sample_center(const CenterLaw& law, RngStream& rng);

/// Precision-weighted combination of stage likelihoods: V = sum V_t,
/// C = V^-1 sum V_t C_t. Throws if the combined curvature is singular.
QLikelihood combine(std::span<const QLikelihood> stages);
QLikelihood combine(std::initializer_list<QLikelihood> stages);

QPosterior posterior_update(const QLikelihood& lik, const GaussianPrior& prior);
/// Conjugate accumulation: folds one more stage likelihood into a posterior.
QPosterior posterior_update(const QLikelihood& lik, const QPosterior& prior);

/// Mean and variance of a^T theta + b under the posterior.
std::pair<double, double> linear_functional(const QPosterior& post, const Vector& a, double b = 0.0);

/// P(a^T theta + b > threshold) under the Gaussian posterior. With zero
/// variance this degenerates to the indicator of mean > threshold.
double tail_probability(const QPosterior& post, const Vector& a, double b, double threshold);

}  // namespace qoc
