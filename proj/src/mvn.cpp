#include "qoc/mvn.hpp"

#include "qoc/linalg.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qoc {

Vector sample_mvn(const MvnLaw& law, RngStream& rng) {
    const Matrix f = factor_psd(law.covariance);
    Vector z(f.cols());
    for (auto& v : z.reshaped()) v = rng.normal();
    return law.mean + f * z;
}

namespace {

// 20-point Gauss-Legendre nodes/weights on [0, 1].
constexpr int kGlN = 20;
constexpr double kGlHalfX[] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                               0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                               0.5108670019508271, 0.3737060887154195, 0.2277858511416451,
                               0.07652652113349734};
constexpr double kGlHalfW[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
                               0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                               0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                               0.1527533871307258};

struct Unit01Rule {
    double x[kGlN];
    double w[kGlN];
    Unit01Rule() {
        for (int i = 0; i < kGlN / 2; ++i) {
            x[2 * i] = 0.5 * (1.0 - kGlHalfX[i]);
            x[2 * i + 1] = 0.5 * (1.0 + kGlHalfX[i]);
            w[2 * i] = w[2 * i + 1] = 0.5 * kGlHalfW[i];
        }
    }
};
const Unit01Rule kUnit01;

// Drops components whose variance is (numerically) zero: a degenerate
// difference is an automatic pass when its mean is nonnegative and an
// automatic fail otherwise.
bool drop_degenerate(Vector& m, Matrix& s) {
    const double scale = std::max(1e-300, s.diagonal().maxCoeff());
    std::vector<int> keep;
    for (int i = 0; i < m.size(); ++i) {
        if (s(i, i) > 1e-12 * scale) {
            keep.push_back(i);
        } else if (m(i) < 0.0) {
            return false;  // impossible constraint
        }
    }
    if (static_cast<int>(keep.size()) == m.size()) return true;
    Vector m2(keep.size());
    Matrix s2(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        m2(a) = m(keep[a]);
        for (std::size_t b = 0; b < keep.size(); ++b) s2(a, b) = s(keep[a], keep[b]);
    }
    m = std::move(m2);
    s = std::move(s2);
    return true;
}

double orthant1(double m, double s) { return normal_cdf(m / std::sqrt(s)); }

double orthant2(const Vector& m, const Matrix& s) {
    const double s0 = std::sqrt(s(0, 0)), s1 = std::sqrt(s(1, 1));
    double rho = s(0, 1) / (s0 * s1);
    rho = std::clamp(rho, -1.0, 1.0);
    return bivariate_normal_upper(-m(0) / s0, -m(1) / s1, rho);
}

// P(X >= 0) in three dimensions by conditioning on the first coordinate
// and integrating the conditional bivariate tail over Gauss-Legendre
// nodes in the probability scale.
double orthant3(const Vector& m, const Matrix& s) {
    const double s0 = std::sqrt(s(0, 0));
    const double a = -m(0) / s0;  // standardized lower limit of X0
    const double pa = normal_cdf(a);
    const double mass = 1.0 - pa;
    if (mass <= 1e-16) return 0.0;

    // Conditional law of (X1, X2) given X0 = m0 + s0 z.
    const double b1 = s(1, 0) / s0, b2 = s(2, 0) / s0;
    const double c11 = s(1, 1) - b1 * b1, c22 = s(2, 2) - b2 * b2;
    const double c12 = s(2, 1) - b1 * b2;
    const double sd1 = std::sqrt(std::max(c11, 1e-300));
    const double sd2 = std::sqrt(std::max(c22, 1e-300));
    const double rho = std::clamp(c12 / (sd1 * sd2), -1.0, 1.0);

    double total = 0.0;
    for (int i = 0; i < kGlN; ++i) {
        const double u = pa + kUnit01.x[i] * mass;
        const double z = normal_quantile(u);
        const double mu1 = m(1) + b1 * z, mu2 = m(2) + b2 * z;
        total += kUnit01.w[i] * bivariate_normal_upper(-mu1 / sd1, -mu2 / sd2, rho);
    }
    return mass * total;
}

// Genz separation-of-variables integrand over one lattice point: lower
// limits a (standardized by the Cholesky factor), upper limits infinite.
double sov_value(const Vector& a, const Matrix& l, const double* w, int dim) {
    double d = normal_cdf(a(0) / l(0, 0));
    double f = 1.0 - d;
    double y[32];
    for (int i = 1; i < dim; ++i) {
        y[i - 1] = normal_quantile(std::min(1.0 - 1e-16, d + w[i - 1] * (1.0 - d)));
        double t = a(i);
        for (int j = 0; j < i; ++j) t -= l(i, j) * y[j];
        d = normal_cdf(t / l(i, i));
        f *= 1.0 - d;
    }
    return f;
}

double orthant_sov(const Vector& m, const Matrix& s, const OrthantOptions& opts) {
    const int dim = static_cast<int>(m.size());
    if (dim > 32) throw std::invalid_argument("orthant_probability: dimension above 32");
    const Matrix l = cholesky_spd(s);
    const Vector a = -m;
    if (dim == 1) return 1.0 - normal_cdf(a(0) / l(0, 0));

    // Kronecker lattice generators frac(sqrt(prime)).
    static constexpr double kPrimes[] = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29, 31,
                                         37,  41,  43,  47,  53,  59,  61,  67,  71,  73, 79,
                                         83,  89,  97,  101, 103, 107, 109, 113, 127};
    const int free_dims = dim - 1;
    double gen[31];
    for (int i = 0; i < free_dims; ++i) gen[i] = std::sqrt(kPrimes[i]) - std::floor(std::sqrt(kPrimes[i]));

    RngStream shift_rng(0x6f7254686e74ULL ^ static_cast<std::uint64_t>(dim));
    long points = std::max(8, opts.initial_points);
    while (true) {
        double mean_sum = 0.0, square_sum = 0.0;
        for (int shift = 0; shift < opts.shifts; ++shift) {
            double offset[31];
            for (int i = 0; i < free_dims; ++i) offset[i] = shift_rng.uniform();
            double acc = 0.0;
            for (long j = 1; j <= points; ++j) {
                double w[31];
                for (int i = 0; i < free_dims; ++i) {
                    const double v = j * gen[i] + offset[i];
                    const double frac = v - std::floor(v);
                    w[i] = 1.0 - std::abs(2.0 * frac - 1.0);  // baker fold
                }
                acc += sov_value(a, l, w, dim);
            }
            const double shift_mean = acc / static_cast<double>(points);
            mean_sum += shift_mean;
            square_sum += shift_mean * shift_mean;
        }
        const double estimate = mean_sum / opts.shifts;
        const double var = std::max(0.0, square_sum / opts.shifts - estimate * estimate);
        const double err = 3.0 * std::sqrt(var / opts.shifts);
        if (err <= opts.tol || points * opts.shifts * 2 > opts.max_points)
            return std::clamp(estimate, 0.0, 1.0);
        points *= 2;
    }
}

}  // namespace

double orthant_probability(const Vector& mean, const Matrix& cov, const OrthantOptions& opts) {
    Vector m = mean;
    Matrix s = cov;
    if (!drop_degenerate(m, s)) return 0.0;
    if (m.size() == 0) return 1.0;
    if (!opts.force_sov) {
        if (m.size() == 1) return orthant1(m(0), s(0, 0));
        if (m.size() == 2) return orthant2(m, s);
        if (m.size() == 3) return orthant3(m, s);
    }
    return orthant_sov(m, s, opts);
}

Vector superiority_probabilities(const MvnLaw& law, const OrthantOptions& opts) {
    const int k = static_cast<int>(law.mean.size());
    if (k < 2) throw std::invalid_argument("superiority_probabilities: need at least two components");
    Vector probs(k);
    Vector m(k - 1);
    Matrix s(k - 1, k - 1);
    for (int target = 0; target < k; ++target) {
        std::vector<int> others;
        others.reserve(k - 1);
        for (int j = 0; j < k; ++j)
            if (j != target) others.push_back(j);
        for (int a = 0; a < k - 1; ++a) {
            const int ja = others[a];
            m(a) = law.mean(target) - law.mean(ja);
            for (int b = 0; b < k - 1; ++b) {
                const int jb = others[b];
                s(a, b) = law.covariance(target, target) - law.covariance(target, jb) -
                          law.covariance(ja, target) + law.covariance(ja, jb);
            }
        }
        probs(target) = orthant_probability(m, s, opts);
    }
    return probs;
}

}  // namespace qoc
