#pragma once

// Case partition in exact integer arithmetic for s = a/b and p = c/d (d = 0: p = infinity).

#include <cstdint>
#include <vector>

#include "fraclab/regularity.hpp"

namespace exact {

struct Rational {
    std::int64_t num;
    std::int64_t den;  // den = 0 encodes infinity
};

struct Expected {
    fraclab::RegularityCase tag;
    bool log_correction;
    int derivative_order;
};

inline Expected partition(int dim, Rational s, Rational p) {
    using fraclab::RegularityCase;
    const std::int64_t a = s.num, b = s.den, c = p.num, d = p.den;
    // 2sp <= n  <=>  2 a c <= n b d
    if (d != 0 && 2 * a * c <= dim * b * d) return {RegularityCase::out_of_range, false, 0};
    if (2 * a <= b) {
        // alpha = 1 iff 2s = 1 and p = infinity
        return {RegularityCase::I, 2 * a == b && d == 0, 0};
    }
    // (2s - 1) p <= n  <=>  (2a - b) c <= n b d
    if (d != 0 && (2 * a - b) * c <= dim * b * d) return {RegularityCase::IIA, (2 * a - b) * c == dim * b * d, 0};
    // alpha - 1 = 1 iff s = 1 and p = infinity
    return {RegularityCase::IIB, a == b && d == 0, 1};
}

struct SweepPoint {
    int dim;
    Rational s;
    Rational p;
    bool radial;
};

/// 200 points: orders k/20, p on a rational ladder plus both thresholds and infinity;
/// every threshold point is kept.
inline std::vector<SweepPoint> sweep() {
    std::vector<SweepPoint> all;
    const std::vector<Rational> ladder = {{3, 2}, {2, 1}, {5, 2}, {3, 1}, {4, 1}, {6, 1}, {12, 1}, {0, 0}};
    for (int dim = 1; dim <= 3; ++dim) {
        for (int k = 1; k <= 20; ++k) {
            const Rational s{k, 20};
            if (2 * k > 20 * dim) continue;  // s > N/2
            for (bool radial : {false, true}) {
                const int n = radial ? 1 : dim;
                if (radial && (dim < 2 || 2 * k > 20)) continue;
                std::vector<Rational> ps = ladder;
                // thresholds n/(2s) = 20 n / (2k) and n/(2s-1) = 20 n / (2k - 20)
                if (20 * n > 2 * k) ps.push_back({20 * n, 2 * k});
                if (2 * k > 20 && 20 * n > 2 * k - 20) ps.push_back({20 * n, 2 * k - 20});
                for (const auto& p : ps) all.push_back({dim, s, p, radial});
            }
        }
    }
    // thin to 200 evenly strided points, keeping every threshold entry
    std::vector<SweepPoint> out;
    std::vector<SweepPoint> rest;
    for (const auto& q : all) {
        const bool threshold = q.p.den != 0 && q.p.den != 1 && q.p.den != 2;
        (threshold ? out : rest).push_back(q);
    }
    const std::size_t need = 200 - out.size();
    for (std::size_t i = 0; i < need; ++i) out.push_back(rest[i * rest.size() / need]);
    return out;
}

inline double to_double(Rational r) {
    return r.den == 0 ? fraclab::kInfiniteP : static_cast<double>(r.num) / static_cast<double>(r.den);
}

}  // namespace exact
