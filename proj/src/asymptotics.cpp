#include "qoc/asymptotics.hpp"

#include "qoc/linalg.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace qoc {

namespace {

constexpr double kScoreTol = 1e-10;
constexpr int kMaxNewtonIter = 200;

// Model mean for one cell at linear predictor eta = row . theta.
double cell_mean(OutcomeModel kind, double eta) {
    return kind == OutcomeModel::logistic ? inverse_logit(eta) : eta;
}

std::vector<int> active_columns(const std::vector<Cell>& cells, int dim) {
    std::vector<int> active;
    for (int j = 0; j < dim; ++j) {
        for (const auto& cell : cells) {
            if (cell.row(j) != 0.0) {
                active.push_back(j);
                break;
            }
        }
    }
    return active;
}

Vector population_score(const std::vector<Cell>& cells, const AnalysisModel& model,
                        const Vector& theta) {
    Vector score = Vector::Zero(model.dim);
    for (const auto& cell : cells)
        score += cell.weight * (cell.q - cell_mean(model.kind, cell.row.dot(theta))) * cell.row;
    return score;
}

// Gauss-Newton matrix of the population score equation (equals the
// expected curvature for logistic models).
Matrix score_jacobian(const std::vector<Cell>& cells, const AnalysisModel& model,
                      const Vector& theta) {
    Matrix h = Matrix::Zero(model.dim, model.dim);
    for (const auto& cell : cells) {
        double w = cell.weight;
        if (model.kind == OutcomeModel::logistic) {
            const double f = inverse_logit(cell.row.dot(theta));
            w *= f * (1.0 - f);
        }
        h.selfadjointView<Eigen::Lower>().rankUpdate(cell.row, w);
    }
    return Matrix(h.selfadjointView<Eigen::Lower>());
}

Vector moment_start(const std::vector<Cell>& cells, const AnalysisModel& model) {
    Vector num = Vector::Zero(model.dim), den = Vector::Zero(model.dim);
    for (const auto& cell : cells) {
        num(cell.arm) += cell.weight * cell.q;
        den(cell.arm) += cell.weight;
    }
    Vector theta = Vector::Constant(model.dim, 0.5);
    for (int k = 0; k < model.dim; ++k)
        if (den(k) > 0.0) theta(k) = num(k) / den(k);
    return theta;
}

}  // namespace

Vector kl_projection(const Scenario& scenario, const AnalysisModel& model, const Allocation& alloc) {
    const auto cells = make_cells(scenario, model, alloc);
    if (cells.empty()) throw std::invalid_argument("kl_projection: no supported cells");
    const auto active = active_columns(cells, model.dim);

    Vector theta = model.kind == OutcomeModel::bernoulli_arms ? moment_start(cells, model)
                                                              : Vector::Zero(model.dim);
    Vector score = population_score(cells, model, theta);
    double score_norm = score.norm();
    for (int iter = 0; iter < kMaxNewtonIter && score_norm > kScoreTol; ++iter) {
        const Matrix h = score_jacobian(cells, model, theta);
        Matrix h_act(active.size(), active.size());
        Vector g_act(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            g_act(a) = score(active[a]);
            for (std::size_t b = 0; b < active.size(); ++b) h_act(a, b) = h(active[a], active[b]);
        }
        Eigen::LLT<Matrix> llt(h_act);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("kl_projection: singular Newton step (collinear design)");
        const Vector step_act = llt.solve(g_act);

        double lambda = 1.0;
        while (true) {
            Vector candidate = theta;
            for (std::size_t a = 0; a < active.size(); ++a)
                candidate(active[a]) += lambda * step_act(a);
            const Vector cand_score = population_score(cells, model, candidate);
            const double cand_norm = cand_score.norm();
            if (cand_norm < score_norm || cand_norm <= kScoreTol) {
                theta = std::move(candidate);
                score = cand_score;
                score_norm = cand_norm;
                break;
            }
            lambda *= 0.5;
            if (lambda < 1e-10)
                throw std::runtime_error("kl_projection: damped Newton made no progress");
        }
    }
    if (score_norm > kScoreTol)
        throw std::runtime_error("kl_projection: no convergence (degenerate or unidentifiable scenario)");
    return theta;
}

Matrix expected_curvature(const Vector& theta, const Scenario& scenario, const AnalysisModel& model,
                          const Allocation& alloc) {
    const auto cells = make_cells(scenario, model, alloc);
    Matrix j = Matrix::Zero(model.dim, model.dim);
    for (const auto& cell : cells) {
        double w = cell.weight;
        if (model.kind == OutcomeModel::logistic) {
            const double f = inverse_logit(cell.row.dot(theta));
            w *= f * (1.0 - f);
        } else {
            const double t = theta(cell.arm);
            w *= cell.q / (t * t) + (1.0 - cell.q) / ((1.0 - t) * (1.0 - t));
        }
        j.selfadjointView<Eigen::Lower>().rankUpdate(cell.row, w);
    }
    return Matrix(j.selfadjointView<Eigen::Lower>());
}

namespace {

// Score of one observation factors as (y - mean) * s; returns s and mean.
std::pair<Vector, double> score_factor(const AnalysisModel& model, const Cell& cell,
                                       const Vector& theta) {
    const double eta = cell.row.dot(theta);
    if (model.kind == OutcomeModel::logistic) return {cell.row, inverse_logit(eta)};
    const double t = theta(cell.arm);
    return {Vector(cell.row / (t * (1.0 - t))), t};
}

}  // namespace

Matrix expected_score_outer(const Vector& theta, const Scenario& scenario, const AnalysisModel& model,
                            const Allocation& alloc) {
    const auto cells = make_cells(scenario, model, alloc);
    Matrix info = Matrix::Zero(model.dim, model.dim);
    for (const auto& cell : cells) {
        const auto [s, m] = score_factor(model, cell, theta);
        const double e2 = cell.q * (1.0 - m) * (1.0 - m) + (1.0 - cell.q) * m * m;
        info.selfadjointView<Eigen::Lower>().rankUpdate(s, cell.weight * e2);
    }
    return Matrix(info.selfadjointView<Eigen::Lower>());
}

Matrix expected_score_cross(const Vector& theta_a, const AnalysisModel& model_a,
                            const Vector& theta_b, const AnalysisModel& model_b,
                            const Scenario& scenario, const Allocation& alloc) {
    const auto cells_a = make_cells(scenario, model_a, alloc);
    const auto cells_b = make_cells(scenario, model_b, alloc);
    if (cells_a.size() != cells_b.size())
        throw std::invalid_argument("expected_score_cross: cell tables do not align");
    Matrix cross = Matrix::Zero(model_a.dim, model_b.dim);
    for (std::size_t i = 0; i < cells_a.size(); ++i) {
        const auto [sa, ma] = score_factor(model_a, cells_a[i], theta_a);
        const auto [sb, mb] = score_factor(model_b, cells_b[i], theta_b);
        const double q = cells_a[i].q;
        const double e = q * (1.0 - ma) * (1.0 - mb) + (1.0 - q) * ma * mb;
        cross += cells_a[i].weight * e * sa * sb.transpose();
    }
    return cross;
}

Matrix sandwich_variance(const Matrix& j, const Matrix& i) {
    const Matrix a = solve_spd(j, i);           // J^-1 I
    const Matrix v = solve_spd(j, Matrix(a.transpose())).transpose();
    return symmetrize(v);
}

AsymptoticTriple asymptotic_triple(const Scenario& scenario, const AnalysisModel& model,
                                   const Allocation& alloc) {
    AsymptoticTriple out;
    out.theta_star = kl_projection(scenario, model, alloc);
    out.j_star = expected_curvature(out.theta_star, scenario, model, alloc);
    const Matrix info = expected_score_outer(out.theta_star, scenario, model, alloc);

    const auto cells = make_cells(scenario, model, alloc);
    const auto active = active_columns(cells, model.dim);
    if (static_cast<int>(active.size()) == model.dim) {
        out.v_star = sandwich_variance(out.j_star, info);
        return out;
    }
    Matrix j_act(active.size(), active.size()), i_act(active.size(), active.size());
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = 0; b < active.size(); ++b) {
            j_act(a, b) = out.j_star(active[a], active[b]);
            i_act(a, b) = info(active[a], active[b]);
        }
    const Matrix v_act = sandwich_variance(j_act, i_act);
    out.v_star = Matrix::Zero(model.dim, model.dim);
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = 0; b < active.size(); ++b)
            out.v_star(active[a], active[b]) = v_act(a, b);
    return out;
}

}  // namespace qoc
