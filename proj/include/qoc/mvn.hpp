#pragma once

#include "qoc/rng.hpp"
#include "qoc/special.hpp"
#include "qoc/types.hpp"

namespace qoc {

struct MvnLaw {
    Vector mean;
    Matrix covariance;
};

struct OrthantOptions {
    int shifts = 8;              // randomizations of the lattice
    int initial_points = 250;    // lattice points per shift
    double tol = 5e-4;           // absolute error target
    long max_points = 1000000;   // total budget across shifts
    bool force_sov = false;      // skip the closed/quadrature paths below dim 4
};

/// One draw mean + L z with L a (jittered) PSD factor of the covariance.
Vector sample_mvn(const MvnLaw& law, RngStream& rng);

/// P(X >= 0) componentwise for X ~ N(mean, cov). Dimensions 1-3 use
/// closed forms and Gauss-Legendre conditioning by default; higher
/// dimensions use the Genz separation-of-variables quasi-Monte Carlo
/// algorithm with randomized lattices and adaptive doubling.
double orthant_probability(const Vector& mean, const Matrix& cov, const OrthantOptions& opts = {});

/// p_k = P(eta_k >= max_j eta_j) for each component of the law, each an
/// orthant probability of the (K-1)-dimensional difference vector.
Vector superiority_probabilities(const MvnLaw& law, const OrthantOptions& opts = {});

}  // namespace qoc
