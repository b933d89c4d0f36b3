#include "qoc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#if defined(__GLIBC__) || defined(__linux__)
extern "C" double lgamma_r(double, int*);
#define QOC_HAVE_LGAMMA_R 1
#endif

namespace qoc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt1_2 = 0.707106781186547524400844362104849039;
constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kSqrt1_2); }

double log_gamma(double x) {
#ifdef QOC_HAVE_LGAMMA_R
    int sign = 0;
    return lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

// Wichura's algorithm AS 241, PPND16.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw std::domain_error("normal_quantile: p outside [0, 1]");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) *
                         r +
                     1.27045825245236838258e+0) *
                        r +
                    3.64784832476320460504e+0) *
                       r +
                   5.76949722146069140550e+0) *
                      r +
                  4.63033784615654529590e+0) *
                     r +
                 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) *
                         r +
                     1.48103976427480074590e-1) *
                        r +
                    6.89767334985100004550e-1) *
                       r +
                   1.67638483018380384940e+0) *
                      r +
                  2.05319162663775882187e+0) *
                     r +
                 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) *
                         r +
                     2.65321895265761230930e-2) *
                        r +
                    2.96560571828504891230e-1) *
                       r +
                   1.78482653991729133580e+0) *
                      r +
                  5.46378491116411436990e+0) *
                     r +
                 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) *
                         r +
                     7.86869131145613259100e-4) *
                        r +
                    1.48753612908506148525e-2) *
                       r +
                   1.36929880922735805310e-1) *
                      r +
                  5.99832206555887937690e-1) *
                     r +
                 1.0);
    }
    return q < 0.0 ? -value : value;
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iter = 400;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps) return h;
    }
    throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_continued_fraction(a, b, x) / a;
    return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

namespace {

// Gauss-Legendre half-nodes on [-1, 1].
constexpr double kGl6X[] = {0.9324695142031521, 0.6612093864662645, 0.2386191860831969};
constexpr double kGl6W[] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910};
constexpr double kGl12X[] = {0.9815606342467192, 0.9041172563704749, 0.7699026741943047,
                             0.5873179542866175, 0.3678314989981802, 0.1252334085114689};
constexpr double kGl12W[] = {0.04717533638651183, 0.1069393259953184, 0.1600783285433462,
                             0.2031674267230659,  0.2334925365383548, 0.2491470458134028};
constexpr double kGl20X[] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                             0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                             0.5108670019508271, 0.3737060887154195, 0.2277858511416451,
                             0.07652652113349734};
constexpr double kGl20W[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
                             0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                             0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                             0.1527533871307258};

}  // namespace

// Genz's BVND scheme: Drezner-Wesolowsky Gauss-Legendre integration over
// the correlation path, with the |rho| -> 1 expansion for the singular
// regime.
double bivariate_normal_upper(double dh, double dk, double r) {
    if (!(r >= -1.0 && r <= 1.0)) throw std::domain_error("bivariate_normal_upper: |rho| > 1");
    const double* gx;
    const double* gw;
    int lg;
    const double ar = std::abs(r);
    if (ar < 0.3) {
        gx = kGl6X, gw = kGl6W, lg = 3;
    } else if (ar < 0.75) {
        gx = kGl12X, gw = kGl12W, lg = 6;
    } else {
        gx = kGl20X, gw = kGl20W, lg = 10;
    }

    double h = dh, k = dk;
    double hk = h * k;
    double bvn = 0.0;
    if (ar < 0.925) {
        if (ar > 0.0) {
            const double hs = 0.5 * (h * h + k * k);
            const double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double sn = std::sin(asr * (is * gx[i] + 1.0) / 2.0);
                    bvn += gw[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn *= asr / (4.0 * kPi);
        }
        bvn += normal_cdf(-h) * normal_cdf(-k);
        return bvn;
    }

    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (ar < 1.0) {
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double c = (4.0 - hk) / 8.0;
        const double d = (12.0 - hk) / 16.0;
        double asr = -0.5 * (bs / as + hk);
        if (asr > -100.0)
            bvn = a * std::exp(asr) *
                  (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
        if (-hk < 100.0) {
            const double b = std::sqrt(bs);
            bvn -= std::exp(-0.5 * hk) * kSqrt2Pi * normal_cdf(-b / a) * b *
                   (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for (int i = 0; i < lg; ++i) {
            for (int is = -1; is <= 1; is += 2) {
                const double t = a * (is * gx[i] + 1.0);
                const double xs = t * t;
                const double rs = std::sqrt(1.0 - xs);
                asr = -0.5 * (bs / xs + hk);
                if (asr > -100.0) {
                    bvn += a * gw[i] * std::exp(asr) *
                           (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                            (1.0 + c * xs * (1.0 + d * xs)));
                }
            }
        }
        bvn = -bvn / (2.0 * kPi);
    }
    if (r > 0.0) {
        bvn += normal_cdf(-std::max(h, k));
    } else {
        bvn = -bvn;
        if (k > h) bvn += normal_cdf(k) - normal_cdf(h);
    }
    return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace qoc
