#include "fraclab/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

constexpr double kSqrtTwoPi = 2.50662827463100050241576528481104525;
constexpr int kHypergeometricCap = 20000;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_sum(double xm1) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (xm1 + static_cast<double>(i));
    return a;
}

double cos_pi(double x) {
    const double n = std::nearbyint(x);
    const double f = x - n;
    if (std::fabs(f) == 0.5) return 0.0;
    const double c = std::cos(kPi * f);
    return std::fmod(std::fabs(n), 2.0) == 1.0 ? -c : c;
}

// Product of Gamma(num_i) / Product of Gamma(den_j). Denominator poles give 0.
template <std::size_t NN, std::size_t ND>
double gamma_ratio(const std::array<double, NN>& num, const std::array<double, ND>& den) {
    double log_sum = 0.0;
    int sign = 1;
    for (double d : den)
        if (is_nonpositive_integer(d)) return 0.0;
    for (double n : num) {
        if (is_nonpositive_integer(n)) throw DomainError("gamma_ratio: pole in numerator at " + std::to_string(n));
        const auto lg = log_gamma_signed(n);
        log_sum += lg.log_abs;
        sign *= lg.sign;
    }
    for (double d : den) {
        const auto lg = log_gamma_signed(d);
        log_sum -= lg.log_abs;
        sign *= lg.sign;
    }
    return sign * std::exp(log_sum);
}

// Series of F(a+m, b+m; ...) style sums used by the logarithmic connection
// formulas:  sum_n t_n * [log(w) - psi(n+1) - psi(n+m+1) + psi(p+n) + psi(q+n)]
// with t_n = (p)_n (q)_n / (n! (n+m)!) w^n.
double log_case_series(double p, double q, int m, double w) {
    double t = 1.0;
    for (int j = 2; j <= m; ++j) t /= j;  // 1/m!
    const double log_w = std::log(w);
    double psi_n1 = digamma(1.0);
    double psi_nm1 = digamma(m + 1.0);
    double psi_p = digamma(p);
    double psi_q = digamma(q);
    double sum = 0.0;
    for (int n = 0; n < kHypergeometricCap; ++n) {
        const double term = t * (log_w - psi_n1 - psi_nm1 + psi_p + psi_q);
        sum += term;
        const double ratio = std::fabs((p + n) * (q + n) / ((n + 1.0) * (n + m + 1.0)) * w);
        if (n > 2 && ratio < 1.0 && std::fabs(term) * ratio / (1.0 - ratio) <= 1e-17 * std::fabs(sum)) return sum;
        if (t == 0.0) return sum;
        t *= (p + n) * (q + n) / ((n + 1.0) * (n + m + 1.0)) * w;
        psi_n1 += 1.0 / (n + 1.0);
        psi_nm1 += 1.0 / (n + m + 1.0);
        psi_p += 1.0 / (p + n);
        psi_q += 1.0 / (q + n);
    }
    throw ConvergenceError("hyp2f1: logarithmic connection series did not converge", std::fabs(t));
}

// F(a, b; a + b + m; z) for integer m, via the logarithmic connection
// formulas around z = 1 (m >= 0 includes the degenerate c = a + b case).
double hyp2f1_integer_gap(double a, double b, int m, double z) {
    const double w = 1.0 - z;
    if (m >= 0) {
        double finite = 0.0;
        if (m >= 1) {
            const double coef = gamma_ratio<2, 2>({static_cast<double>(m), a + b + m}, {a + m, b + m});
            double t = 1.0;
            double s = 0.0;
            for (int n = 0; n < m; ++n) {
                s += t;
                t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
            }
            finite = coef * s;
        }
        const double coef2 = gamma_ratio<1, 2>({a + b + m}, {a, b});
        if (coef2 == 0.0) return finite;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return finite - sign * std::pow(w, m) * coef2 * log_case_series(a + m, b + m, m, w);
    }
    const int big_m = -m;
    const double cc = a + b - big_m;
    const double coef1 = gamma_ratio<2, 2>({static_cast<double>(big_m), cc}, {a, b});
    double t = 1.0;
    double s = 0.0;
    for (int n = 0; n < big_m; ++n) {
        s += t;
        t *= (a - big_m + n) * (b - big_m + n) / ((n + 1.0) * (1.0 - big_m + n)) * w;
    }
    const double finite = coef1 * std::pow(w, -big_m) * s;
    const double coef2 = gamma_ratio<1, 2>({cc}, {a - big_m, b - big_m});
    if (coef2 == 0.0) return finite;
    const double sign = (big_m % 2 == 0) ? 1.0 : -1.0;
    return finite - sign * coef2 * log_case_series(a, b, big_m, w);
}

}  // namespace

double sin_pi(double x) {
    const double n = std::nearbyint(x);
    const double f = x - n;
    if (f == 0.0) return 0.0;
    const double s = std::sin(kPi * f);
    return std::fmod(std::fabs(n), 2.0) == 1.0 ? -s : s;
}

double gamma(double x) {
    if (std::isnan(x)) return x;
    if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.5) return kPi / (sin_pi(x) * gamma(1.0 - x));
    if (x > 171.7) return std::numeric_limits<double>::infinity();
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    const double half = std::pow(t, 0.5 * (xm1 + 0.5));
    return kSqrtTwoPi * half * (half * std::exp(-t)) * lanczos_sum(xm1);
}

SignedLogGamma log_gamma_signed(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("log_gamma: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
        const double sp = sin_pi(x);
        const auto rest = log_gamma_signed(1.0 - x);
        return {std::log(kPi / std::fabs(sp)) - rest.log_abs, (sp > 0 ? 1 : -1) * rest.sign};
    }
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    return {std::log(kSqrtTwoPi * lanczos_sum(xm1)) + (xm1 + 0.5) * std::log(t) - t, 1};
}

double log_gamma(double x) {
    if (x <= 0.0) throw DomainError("log_gamma: requires x > 0");
    return log_gamma_signed(x).log_abs;
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 171.7) return 0.0;
    return 1.0 / gamma(x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.0) return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    // Bernoulli tail: B_2k / (2k x^2k)
    const double tail =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return result + std::log(x) - 0.5 / x - tail;
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: requires a > 0 and b > 0");
    if (a + b < 100.0) return gamma(a) * gamma(b) / gamma(a + b);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

HypergeometricRegime HypergeometricParams::regime() const {
    const double gap = c - a - b;
    if (std::fabs(gap - std::nearbyint(gap)) <= kIntegerTolerance) return HypergeometricRegime::integer;
    return gap > 0.0 ? HypergeometricRegime::positive_noninteger : HypergeometricRegime::other;
}

namespace detail {

double hyp2f1_series(double a, double b, double c, double z) {
    double sum = 1.0;
    double term = 1.0;
    for (int n = 0; n < kHypergeometricCap; ++n) {
        const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        const double r = std::fabs(ratio);
        if (n > 1 && r < 1.0) {
            // crude bound for the remaining terms once they shrink geometrically
            const double next = std::fabs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0)) * z);
            if (next < 1.0 && std::fabs(term) * next / (1.0 - next) <= 1e-17 * std::fabs(sum)) return sum;
        }
    }
    throw ConvergenceError("hyp2f1: direct series did not converge within the iteration cap", std::fabs(term));
}

double hyp2f1_connection(double a, double b, double c, double z) {
    const HypergeometricParams p{a, b, c, z};
    const double w = 1.0 - z;
    if (p.regime() == HypergeometricRegime::integer) {
        const int m = static_cast<int>(std::nearbyint(c - a - b));
        return hyp2f1_integer_gap(a, b, m, z);
    }
    const double d = c - a - b;
    const double coef1 = gamma_ratio<2, 2>({c, d}, {c - a, c - b});
    const double coef2 = gamma_ratio<2, 2>({c, -d}, {a, b});
    double result = 0.0;
    if (coef1 != 0.0) result += coef1 * hyp2f1_series(a, b, 1.0 - d, w);
    if (coef2 != 0.0) result += std::pow(w, d) * coef2 * hyp2f1_series(c - a, c - b, 1.0 + d, w);
    return result;
}

}  // namespace detail

double hyp2f1(const HypergeometricParams& p) {
    if (is_nonpositive_integer(p.c)) throw DomainError("hyp2f1: c must not be a nonpositive integer");
    if (!(p.z >= 0.0) || !(p.z < 1.0)) throw DomainError("hyp2f1: requires 0 <= z < 1");
    if (p.z == 0.0) return 1.0;
    // Terminating series: a polynomial, summed directly for any z.
    if (is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b)) return detail::hyp2f1_series(p.a, p.b, p.c, p.z);
    if (p.z <= 0.5) return detail::hyp2f1_series(p.a, p.b, p.c, p.z);
    return detail::hyp2f1_connection(p.a, p.b, p.c, p.z);
}

// ---------------------------------------------------------------- Bessel

namespace detail {

double bessel_j_series(double nu, double x) {
    using ld = long double;
    const ld half = static_cast<ld>(x) / 2;
    ld lead;
    if (nu < 100.0) {
        lead = std::pow(half, static_cast<ld>(nu)) / static_cast<ld>(gamma(nu + 1.0));
    } else {
        lead = std::exp(static_cast<ld>(nu) * std::log(half) - static_cast<ld>(log_gamma(nu + 1.0)));
    }
    const ld q = half * half;
    ld term = lead;
    ld sum = lead;
    for (int k = 1; k < 2000; ++k) {
        term *= -q / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
        sum += term;
        if (static_cast<ld>(k) * (k + nu) > q && std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::fabs(a);
        if (mag > last) break;  // asymptotic series started to diverge
        last = mag;
        const int r = k % 4;  // P collects even k with alternating signs, Q odd k
        if (r == 1) q += a;
        else if (r == 2) p -= a;
        else if (r == 3) q -= a;
        else p += a;
        if (mag < 1e-17) break;
    }
    const double phase = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phase), sp = std::sin(phase);
    const double cos_chi = cx * cp + sx * sp;
    const double sin_chi = sx * cp - cx * sp;
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace detail

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0)) throw DomainError("bessel_j: requires nu >= 0");
    if (!(x >= 0.0)) throw DomainError("bessel_j: requires x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x <= detail::kBesselSeriesLimit) return detail::bessel_j_series(nu, x);

    const double n_floor = std::floor(nu);
    const double mu = nu - n_floor;
    const int n = static_cast<int>(n_floor);
    const double j_mu = detail::bessel_j_asymptotic(mu, x);
    if (n == 0) return j_mu;
    const double j_mu1 = detail::bessel_j_asymptotic(mu + 1.0, x);
    if (n == 1) return j_mu1;

    if (nu < x) {
        // Upward recurrence is stable while the order stays below x.
        double prev = j_mu, cur = j_mu1;
        for (int k = 1; k < n; ++k) {
            const double next = 2.0 * (mu + k) / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }

    // Miller's backward recurrence, normalised against the asymptotic J_mu / J_mu+1.
    const int start = n + 30 + static_cast<int>(std::sqrt(40.0 * n));
    double above = 0.0, cur = 1e-300, at_nu = 0.0, at_mu1 = 0.0;
    for (int k = start; k >= 1; --k) {
        const double below = 2.0 * (mu + k) / x * cur - above;
        above = cur;
        cur = below;  // order mu + k - 1
        if (k - 1 == n) at_nu = cur;
        if (k - 1 == 1) at_mu1 = cur;
        if (std::fabs(cur) > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            at_nu *= 1e-250;
            at_mu1 *= 1e-250;
        }
    }
    const double scale = std::fabs(j_mu) > std::fabs(j_mu1) ? j_mu / cur : j_mu1 / at_mu1;
    return at_nu * scale;
}

double bessel_j_zero(double nu, int m) {
    if (m < 1) throw DomainError("bessel_j_zero: m must be >= 1");
    if (!(nu >= 0.0)) throw DomainError("bessel_j_zero: requires nu >= 0");
    double x;
    if (m == 1 && nu >= 1.0) {
        const double c = std::cbrt(nu);
        x = nu + 1.8557571 * c + 1.033150 / c;
    } else {
        const double b = (m + 0.5 * nu - 0.25) * kPi;
        const double mu = 4.0 * nu * nu;
        const double e = 8.0 * b;
        x = b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
    }
    for (int it = 0; it < 100; ++it) {
        const double j = bessel_j(nu, x);
        const double dj = nu / x * j - bessel_j(nu + 1.0, x);
        const double step = j / dj;
        x -= step;
        if (std::fabs(step) <= 1e-13 * x) {
            const double j2 = bessel_j(nu, x);
            return x - j2 / (nu / x * j2 - bessel_j(nu + 1.0, x));
        }
    }
    throw ConvergenceError("bessel_j_zero: Newton iteration did not converge", 0.0);
}

}  // namespace fraclab
