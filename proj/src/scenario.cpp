#include "qoc/scenario.hpp"

#include "qoc/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {

double Scenario::response_prob(const Vector& xplus, int arm) const {
    if (kind == OutcomeModel::bernoulli_arms) return outcome_params(arm);
    return inverse_logit(design_row(xplus, arm).dot(outcome_params));
}

void Scenario::validate() const {
    if (kind == OutcomeModel::bernoulli_arms) {
        if (outcome_params.size() < arms)
            throw std::invalid_argument("scenario: fewer outcome params than arms");
        for (int k = 0; k < arms; ++k) {
            const double w = outcome_params(k);
            if (!(w > 0.0 && w < 1.0))
                throw std::invalid_argument("scenario: response probability outside (0, 1)");
        }
    } else if (!design_row) {
        throw std::invalid_argument("scenario: logistic scenario needs a design row map");
    }
    if (!profiles.empty()) {
        double total = 0.0;
        for (const auto& pr : profiles) {
            if (pr.p < 0.0) throw std::invalid_argument("scenario: negative profile probability");
            total += pr.p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("scenario: profile probabilities do not sum to 1");
    }
}

Vector AnalysisModel::analysis_covariates(const Vector& xplus) const {
    Vector x(static_cast<Eigen::Index>(kept_covariates.size()));
    for (std::size_t i = 0; i < kept_covariates.size(); ++i) x(i) = xplus(kept_covariates[i]);
    return x;
}

Allocation Allocation::shared(Vector arm_probs, double n) {
    Allocation a;
    a.rho.push_back(std::move(arm_probs));
    a.n = n;
    return a;
}

const Vector& Allocation::arm_probs(std::size_t profile_index) const {
    if (rho.size() == 1) return rho.front();
    return rho.at(profile_index);
}

std::vector<Cell> make_cells(const Scenario& scenario, const AnalysisModel& model,
                             const Allocation& alloc) {
    std::vector<Profile> profiles = scenario.profiles;
    if (profiles.empty()) profiles.push_back(Profile{Vector(), 1.0});

    std::vector<Cell> cells;
    cells.reserve(profiles.size() * model.arms);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const Vector& probs = alloc.arm_probs(i);
        for (int k = 0; k < model.arms; ++k) {
            Cell cell;
            cell.weight = profiles[i].p * probs(k);
            if (cell.weight <= 0.0) continue;
            cell.q = scenario.response_prob(profiles[i].x, k);
            if (model.kind == OutcomeModel::bernoulli_arms) {
                cell.row = Vector::Zero(model.dim);
                cell.row(k) = 1.0;
            } else {
                cell.row = model.design_row(model.analysis_covariates(profiles[i].x), k);
                if (cell.row.size() != model.dim)
                    throw std::invalid_argument("analysis model: design row length != dim");
            }
            cell.arm = k;
            cell.profile = static_cast<int>(i);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace qoc
