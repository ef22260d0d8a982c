#pragma once

// Gamma, log-Gamma with sign, digamma, Beta, Gauss 2F1 on [0,1) and Bessel J_nu.
// Everything here is pure and reentrant.

namespace fraclab {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
    double log_abs;
    int sign;
};

double gamma(double x);
SignedLogGamma log_gamma_signed(double x);
double log_gamma(double x);  // x > 0
/// 1/Gamma(x); exactly zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);
double digamma(double x);
double beta(double a, double b);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

/// Classification of c - a - b that selects the connection formula near z = 1.
enum class HypergeometricRegime {
    positive_noninteger,  // c - a - b > 0, non-integer
    integer,              // |c - a - b - m| <= kIntegerTolerance for an integer m (log case)
    other,                // negative non-integer
};

struct HypergeometricParams {
    double a;
    double b;
    double c;
    double z;

    /// Absolute band around integers inside which c - a - b is treated as an integer.
    static constexpr double kIntegerTolerance = 1e-9;

    HypergeometricRegime regime() const;
};

/// Gauss hypergeometric function F(a, b; c; z) for 0 <= z < 1.
/// z <= 0.5 uses the defining series; z > 0.5 the z -> 1 - z connection formulas.
double hyp2f1(const HypergeometricParams& p);
inline double hyp2f1(double a, double b, double c, double z) { return hyp2f1({a, b, c, z}); }

/// Bessel function of the first kind J_nu(x), nu >= 0, x >= 0.
double bessel_j(double nu, double x);

/// The m-th positive zero of J_nu (m >= 1).
double bessel_j_zero(double nu, int m);

namespace detail {
// Exposed for cross-regime tests.
double hyp2f1_series(double a, double b, double c, double z);
double hyp2f1_connection(double a, double b, double c, double z);

inline constexpr double kBesselSeriesLimit = 20.0;  // x <= this: power series in extended precision
double bessel_j_series(double nu, double x);
double bessel_j_asymptotic(double nu, double x);
}  // namespace detail

}  // namespace fraclab
