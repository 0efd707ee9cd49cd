#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "ssdm/errors.hpp"

namespace ssdm::stats {

// standard normal CDF / survival via erfc (keeps precision in the far tails)
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730950488); }
inline double normal_sf(double x) { return 0.5 * std::erfc(x / 1.4142135623730950488); }

// Inverse standard normal CDF, Wichura's PPND16 (AS 241). |error| ~ 1e-16.
inline double normal_ppf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw parameter_error("normal_ppf: p must be in [0,1]");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) *
                        r +
                    4.5921953931549871457e4) *
                       r +
                   1.3731693765509461125e4) *
                      r +
                  1.9715909503065514427e3) *
                     r +
                 1.3314166789178437745e2) *
                    r +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) *
                        r +
                    2.1213794301586595867e4) *
                       r +
                   5.3941960214247511077e3) *
                      r +
                  6.8718700749205790830e2) *
                     r +
                 4.2313330701600911252e1) *
                    r +
                1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e0) *
                    r +
                3.64784832476320460504e0) *
                   r +
               5.76949722146069140550e0) *
                  r +
              4.63033784615654529590e0) *
                 r +
             1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e0) *
                  r +
              2.05319162663775882187e0) *
                 r +
             1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e0) *
                  r +
              5.46378491116411436990e0) *
                 r +
             6.65790464350110377720e0) /
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
    return (q < 0.0) ? -x : x;
}

namespace detail {

constexpr double kEps = 1e-15;
constexpr double kFpMin = 1e-300;
constexpr int kMaxIter = 500;

// regularized lower incomplete gamma P(a,x) by series expansion (x < a+1)
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// regularized upper incomplete gamma Q(a,x) by continued fraction (x >= a+1)
inline double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// continued fraction for the regularized incomplete beta
inline double betacf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace detail

// regularized lower incomplete gamma P(a,x)
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw parameter_error("gamma_p: a must be positive");
    if (x < 0.0) throw parameter_error("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (a <= 0.0) throw parameter_error("gamma_q: a must be positive");
    if (x < 0.0) throw parameter_error("gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

// regularized incomplete beta I_x(a,b)
inline double beta_inc(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw parameter_error("beta_inc: a,b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

// chi-square upper tail
inline double chi2_sf(double x, double df) {
    if (df < 1.0) throw parameter_error("chi2_sf: df must be >= 1");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

// F distribution upper tail
inline double f_sf(double x, double d1, double d2) {
    if (d1 < 1.0 || d2 < 1.0) throw parameter_error("f_sf: degrees of freedom must be >= 1");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return beta_inc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x));
}

// Student t upper tail
inline double t_sf(double t, double df) {
    if (df < 1.0) throw parameter_error("t_sf: df must be >= 1");
    const double half = 0.5 * beta_inc(df / 2.0, 0.5, df / (df + t * t));
    return (t >= 0.0) ? half : 1.0 - half;
}

}  // namespace ssdm::stats
