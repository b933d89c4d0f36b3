#include "qoc/qlik.hpp"

#include "qoc/linalg.hpp"
#include "qoc/special.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qoc {

CenterLaw::CenterLaw(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)), factor_(factor_psd(covariance_)) {}

Vector sample_center(const CenterLaw& law, RngStream& rng) {
    Vector z(law.factor().cols());
    for (auto& v : z.reshaped()) v = rng.normal();
    return law.mean() + law.factor() * z;
}

QLikelihood combine(std::span<const QLikelihood> stages) {
    if (stages.empty()) throw std::invalid_argument("combine: no stages");
    const auto dim = stages.front().center.size();
    Matrix v = Matrix::Zero(dim, dim);
    Vector b = Vector::Zero(dim);
    for (const auto& stage : stages) {
        if (stage.center.size() != dim || stage.curvature.rows() != dim)
            throw std::invalid_argument("combine: stage dimensions differ");
        v += stage.curvature;
        b += stage.curvature * stage.center;
    }
    Eigen::LLT<Matrix> llt(v);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("combine: singular combined curvature (zero-information stages)");
    return {llt.solve(b), std::move(v)};
}

QLikelihood combine(std::initializer_list<QLikelihood> stages) {
    return combine(std::span<const QLikelihood>(stages.begin(), stages.size()));
}

QPosterior posterior_update(const QLikelihood& lik, const GaussianPrior& prior) {
    if (prior.flat) {
        Eigen::LLT<Matrix> llt(lik.curvature);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("posterior_update: singular curvature under a flat prior");
        return {lik.center, lik.curvature};
    }
    const Matrix prior_precision = inverse_spd(prior.covariance);
    Matrix v_post = lik.curvature + prior_precision;
    const Vector b = lik.curvature * lik.center + prior_precision * prior.mean;
    Eigen::LLT<Matrix> llt(v_post);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("posterior_update: singular posterior curvature");
    return {llt.solve(b), std::move(v_post)};
}

QPosterior posterior_update(const QLikelihood& lik, const QPosterior& prior) {
    Matrix v_post = lik.curvature + prior.curvature;
    const Vector b = lik.curvature * lik.center + prior.curvature * prior.center;
    Eigen::LLT<Matrix> llt(v_post);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("posterior_update: singular posterior curvature");
    return {llt.solve(b), std::move(v_post)};
}

std::pair<double, double> linear_functional(const QPosterior& post, const Vector& a, double b) {
    if (a.size() != post.center.size())
        throw std::invalid_argument("linear_functional: dimension mismatch");
    const double mean = a.dot(post.center) + b;
    Eigen::LLT<Matrix> llt(post.curvature);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("linear_functional: singular posterior curvature");
    const double variance = a.dot(llt.solve(a));
    return {mean, variance};
}

double tail_probability(const QPosterior& post, const Vector& a, double b, double threshold) {
    const auto [mean, variance] = linear_functional(post, a, b);
    if (variance <= 0.0) return mean > threshold ? 1.0 : 0.0;
    return normal_cdf((mean - threshold) / std::sqrt(variance));
}

}  // namespace qoc
