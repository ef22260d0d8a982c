#pragma once

// Exponent predictions for (-Delta)^s psi + V psi = f with f, V in L^p, the
// bootstrap schedule, and empirical Holder-exponent fits from samples.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "fraclab/fields.hpp"

namespace fraclab {

/// p = infinity, with 1/p = 0.
inline constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

enum class RegularityCase { I, IIA, IIB, out_of_range };

const char* case_name(RegularityCase c);

struct ExponentReport {
    RegularityCase case_tag = RegularityCase::out_of_range;
    double alpha = 0.0;        // 2s - dim/p
    double exponent = 0.0;     // alpha, or alpha - 1 at derivative level; in (0, 1]
    bool log_correction = false;
    int derivative_order = 0;  // 0 or 1
    int effective_dim = 1;     // N, or 1 in radial mode
};

/// Thresholds compare 2sp against dim and (2s-1)p against dim with a relative
/// snap of 1e-12, so rational boundaries land on the closed side.
ExponentReport predict_exponent(int dim, double s, double p, bool radial_mode = false);

struct BootstrapTrace {
    double epsilon = 0.0;             // 2s/N - 1/p
    std::vector<double> q_inverses;   // q_0^{-1} = 1, q_k^{-1} = 1 - k eps/2
    int iterations = 0;               // first k with q_k^{-1} < eps
};

/// Throws DomainError when eps <= 0 (p <= N/(2s)).
BootstrapTrace bootstrap_schedule(int dim, double s, double p);

struct FitConfig {
    double window = kUnbounded;   // samples farther than this from the center are ignored
    double r_near = kUnbounded;   // near endpoint lies within this distance of the center
    double near_ratio = 0.125;    // and within near_ratio * |x - y| of it
    int pair_count = 200;
    int min_samples = 200;
    int min_pairs = 30;
    double min_decades = 2.0;
    double log_gate_low = 0.95;
    double log_gate_high = 1.05;
};

struct FitResult {
    double exponent_hat = 0.0;
    double stderr_hat = 0.0;
    double constant = 0.0;           // c in |g(x) - g(y)| ~ c d^beta
    bool log_model_preferred = false;
    int pair_count = 0;
    double scale_min = 0.0;
    double scale_max = 0.0;
    bool low_confidence = false;     // scale range under min_decades
};

struct Sample {
    Point x{};
    double value = 0.0;
};

struct VectorSample {
    Point x{};
    std::array<double, 3> value{};
};

/// Log-log regression of |g(x) - g(y)| on |x - y| over seeded random pairs with
/// one endpoint near the center, after averaging within dyadic distance bins.
/// Throws DataError on too few samples or pairs, or constant data.
FitResult fit_holder_exponent(const std::vector<Sample>& samples, const Point& center, std::uint64_t seed,
                              const FitConfig& config = {});

/// As fit_holder_exponent on the max-component increments of a gradient field.
FitResult fit_gradient_exponent(const std::vector<VectorSample>& samples, const Point& center, std::uint64_t seed,
                                const FitConfig& config = {});

}  // namespace fraclab
