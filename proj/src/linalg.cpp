#include "qoc/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace qoc {

namespace {

constexpr double kJitterStart = 1e-12;
constexpr double kJitterMax = 1e-6;

// Runs fn(candidate) over a + jitter*I with escalating jitter.
template <class Fn>
auto with_jitter(const Matrix& a, const char* what, Fn&& fn) {
    {
        auto result = fn(a);
        if (result) return *std::move(result);
    }
    const Matrix eye = Matrix::Identity(a.rows(), a.cols());
    for (double jitter = kJitterStart; jitter <= kJitterMax * (1 + 1e-12); jitter *= 10) {
        auto result = fn(Matrix(a + jitter * eye));
        if (result) return *std::move(result);
    }
    throw std::runtime_error(std::string(what) + ": matrix not positive definite within jitter budget");
}

}  // namespace

Matrix cholesky_spd(const Matrix& a) {
    return with_jitter(a, "cholesky_spd", [](const Matrix& m) -> std::optional<Matrix> {
        Eigen::LLT<Matrix> llt(m);
        if (llt.info() != Eigen::Success) return std::nullopt;
        return Matrix(llt.matrixL());
    });
}

Matrix factor_psd(const Matrix& a) {
    if (a.size() == 0 || a.isZero(0.0)) return Matrix::Zero(a.rows(), a.cols());
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() == Eigen::Success) return llt.matrixL();

    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
    if (es.info() != Eigen::Success) throw std::runtime_error("factor_psd: eigendecomposition failed");
    Vector lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    if (lam.minCoeff() < -1e-8 * scale)
        throw std::runtime_error("factor_psd: matrix is not positive semidefinite");
    for (auto& v : lam.reshaped()) v = v > 0 ? std::sqrt(v) : 0.0;
    return es.eigenvectors() * lam.asDiagonal();
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
    return with_jitter(a, "solve_spd", [&](const Matrix& m) -> std::optional<Matrix> {
        Eigen::LLT<Matrix> llt(m);
        if (llt.info() != Eigen::Success) return std::nullopt;
        return Matrix(llt.solve(b));
    });
}

Vector solve_spd(const Matrix& a, const Vector& b) {
    return Vector(solve_spd(a, Matrix(b)));
}

Matrix inverse_spd(const Matrix& a) {
    return solve_spd(a, Matrix(Matrix::Identity(a.rows(), a.cols())));
}

}  // namespace qoc
