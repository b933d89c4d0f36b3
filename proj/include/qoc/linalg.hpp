#pragma once

#include "qoc/types.hpp"

namespace qoc {

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// On failure a jitter of 1e-12 is added to the diagonal and escalated
/// tenfold; jitter past 1e-6 throws.
Matrix cholesky_spd(const Matrix& a);

/// A factor f with f f^T = a for a symmetric positive *semi*definite a.
/// LLT fast path, eigendecomposition fallback with tiny negative
/// eigenvalues clamped to zero. Genuinely indefinite input throws.
Matrix factor_psd(const Matrix& a);

/// Solve a x = b for SPD a with the cholesky_spd jitter policy.
Matrix solve_spd(const Matrix& a, const Matrix& b);
Vector solve_spd(const Matrix& a, const Vector& b);

Matrix inverse_spd(const Matrix& a);

}  // namespace qoc
