#include "fraclab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

constexpr double kSnap = 1e-12;

// a <= b up to a relative snap
bool leq(double a, double b) { return a <= b + kSnap * std::max(std::fabs(a), std::fabs(b)); }

void validate(int dim, double s, double p) {
    if (dim < 1) throw DomainError("dimension must be >= 1");
    if (!(s > 0.0) || s > std::min(1.0, 0.5 * dim) + 1e-12)
        throw DomainError("order s must satisfy 0 < s <= min(1, N/2)");
    if (!(p > 1.0)) throw DomainError("integrability p must satisfy 1 < p <= infinity");
}

struct Pair {
    double d;
    double inc;
};

FitResult fit_pairs(std::size_t n, const std::function<double(std::size_t)>& dist_to_center,
                    const std::function<double(std::size_t, std::size_t)>& distance,
                    const std::function<double(std::size_t, std::size_t)>& increment, std::uint64_t seed,
                    const FitConfig& cfg) {
    std::vector<std::size_t> window, near;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = dist_to_center(i);
        if (r <= cfg.window) window.push_back(i);
        if (r <= std::min(cfg.window, cfg.r_near)) near.push_back(i);
    }
    if (static_cast<int>(window.size()) < cfg.min_samples)
        throw DataError("fit: " + std::to_string(window.size()) + " samples in the window, need " +
                        std::to_string(cfg.min_samples));
    if (near.empty()) throw DataError("fit: no sample within r_near of the center");

    std::mt19937_64 rng(seed);
    std::vector<Pair> pairs;
    bool any_nonzero = false;
    const long attempts = 200L * cfg.pair_count;
    for (long a = 0; a < attempts && static_cast<int>(pairs.size()) < cfg.pair_count; ++a) {
        const std::size_t i = near[rng() % near.size()];
        const std::size_t j = window[rng() % window.size()];
        const double d = distance(i, j);
        if (!(d > 0.0) || dist_to_center(i) > cfg.near_ratio * d) continue;
        const double inc = increment(i, j);
        if (inc > 0.0) any_nonzero = true;
        pairs.push_back({d, inc});
    }
    if (!any_nonzero) throw DataError("fit: increments vanish identically (constant data)");
    std::erase_if(pairs, [](const Pair& p) { return !(p.inc > 0.0); });
    if (static_cast<int>(pairs.size()) < cfg.min_pairs)
        throw DataError("fit: only " + std::to_string(pairs.size()) + " usable pairs, need " +
                        std::to_string(cfg.min_pairs));

    // dyadic bins in d; each bin contributes the mean of (log d, log inc)
    std::map<int, std::array<double, 3>> bins;  // sum log d, sum log inc, count
    FitResult out;
    out.pair_count = static_cast<int>(pairs.size());
    out.scale_min = kUnbounded;
    out.scale_max = 0.0;
    for (const auto& p : pairs) {
        const int key = static_cast<int>(std::floor(std::log2(p.d)));
        auto& b = bins[key];
        b[0] += std::log(p.d);
        b[1] += std::log(p.inc);
        b[2] += 1.0;
        out.scale_min = std::min(out.scale_min, p.d);
        out.scale_max = std::max(out.scale_max, p.d);
    }
    std::vector<double> xs, ys;
    for (const auto& [k, b] : bins) {
        xs.push_back(b[0] / b[2]);
        ys.push_back(b[1] / b[2]);
    }
    const std::size_t m = xs.size();
    if (m < 3) throw DataError("fit: distances span fewer than three dyadic bins");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double beta = sxy / sxx;
    const double icpt = my - beta * mx;
    double ssr_pow = 0.0;
    for (std::size_t i = 0; i < m; ++i) ssr_pow += std::pow(ys[i] - icpt - beta * xs[i], 2);
    out.exponent_hat = beta;
    out.constant = std::exp(icpt);
    out.stderr_hat = std::sqrt(ssr_pow / std::max<std::size_t>(1, m - 2) / sxx);
    out.low_confidence = std::log10(out.scale_max / out.scale_min) < cfg.min_decades;

    // c d log(1/d): one free constant, defined for d < 1
    if (beta >= cfg.log_gate_low && beta <= cfg.log_gate_high && out.scale_max < 1.0) {
        std::vector<double> z(m);
        double mz = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = std::exp(xs[i]);
            z[i] = ys[i] - std::log(d * std::log(1.0 / d));
            mz += z[i];
        }
        mz /= m;
        double ssr_log = 0.0;
        for (double v : z) ssr_log += (v - mz) * (v - mz);
        out.log_model_preferred = ssr_log < ssr_pow;
    }
    return out;
}

}  // namespace

const char* case_name(RegularityCase c) {
    switch (c) {
        case RegularityCase::I: return "I";
        case RegularityCase::IIA: return "II.A";
        case RegularityCase::IIB: return "II.B";
        case RegularityCase::out_of_range: return "out_of_range";
    }
    return "?";
}

ExponentReport predict_exponent(int dim, double s, double p, bool radial_mode) {
    validate(dim, s, p);
    ExponentReport r;
    r.effective_dim = radial_mode ? 1 : dim;
    const double n = r.effective_dim;
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    r.alpha = 2.0 * s - n * inv_p;
    if (!std::isinf(p) && leq(2.0 * s * p, n)) {
        r.case_tag = RegularityCase::out_of_range;
        r.exponent = 0.0;
        return r;
    }
    auto finish = [&](double e) {
        if (std::fabs(e - 1.0) <= kSnap) {
            r.exponent = 1.0;
            r.log_correction = true;
        } else {
            r.exponent = e;
        }
    };
    if (s <= 0.5 + 1e-12) {
        r.case_tag = RegularityCase::I;
        finish(r.alpha);
    } else if (!std::isinf(p) && leq((2.0 * s - 1.0) * p, n)) {
        r.case_tag = RegularityCase::IIA;
        finish(r.alpha);
    } else {
        r.case_tag = RegularityCase::IIB;
        r.derivative_order = 1;
        finish(r.alpha - 1.0);
    }
    return r;
}

BootstrapTrace bootstrap_schedule(int dim, double s, double p) {
    validate(dim, s, p);
    BootstrapTrace t;
    t.epsilon = 2.0 * s / dim - (std::isinf(p) ? 0.0 : 1.0 / p);
    if (!(t.epsilon > kSnap)) throw DomainError("bootstrap: eps = 2s/N - 1/p must be > 0 (requires p > N/(2s))");
    t.q_inverses.push_back(1.0);
    for (int k = 1; k < 10'000'000; ++k) {
        const double q = 1.0 - k * t.epsilon / 2.0;  // direct, no accumulated rounding
        t.q_inverses.push_back(q);
        if (q < t.epsilon * (1.0 - kSnap)) {
            t.iterations = k;
            return t;
        }
    }
    throw DomainError("bootstrap: eps too small for the iteration cap");
}

FitResult fit_holder_exponent(const std::vector<Sample>& samples, const Point& center, std::uint64_t seed,
                              const FitConfig& config) {
    for (const auto& s : samples)
        if (!std::isfinite(s.value)) throw DataError("fit: non-finite sample value");
    return fit_pairs(
        samples.size(), [&](std::size_t i) { return norm(samples[i].x - center); },
        [&](std::size_t i, std::size_t j) { return norm(samples[i].x - samples[j].x); },
        [&](std::size_t i, std::size_t j) { return std::fabs(samples[i].value - samples[j].value); }, seed, config);
}

FitResult fit_gradient_exponent(const std::vector<VectorSample>& samples, const Point& center, std::uint64_t seed,
                                const FitConfig& config) {
    for (const auto& s : samples)
        for (double v : s.value)
            if (!std::isfinite(v)) throw DataError("fit: non-finite gradient sample");
    return fit_pairs(
        samples.size(), [&](std::size_t i) { return norm(samples[i].x - center); },
        [&](std::size_t i, std::size_t j) { return norm(samples[i].x - samples[j].x); },
        [&](std::size_t i, std::size_t j) {
            double m = 0.0;
            for (int k = 0; k < 3; ++k) m = std::max(m, std::fabs(samples[i].value[k] - samples[j].value[k]));
            return m;
        },
        seed, config);
}

}  // namespace fraclab
