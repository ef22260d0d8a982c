#include <doctest.h>

#include <cmath>
#include <cstring>

#include "../support/exact_partition.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/regularity.hpp"

using namespace fraclab;

namespace {

// center plus points at geometric distances on both sides
std::vector<Sample> line_samples(double (*g)(double), double dmin, double dmax, int per_side) {
    std::vector<Sample> out{{{0, 0, 0}, g(0.0)}};
    for (int i = 0; i < per_side; ++i) {
        const double d = dmin * std::pow(dmax / dmin, i / (per_side - 1.0));
        out.push_back({{d, 0, 0}, g(d)});
        out.push_back({{-d, 0, 0}, g(-d)});
    }
    return out;
}

}  // namespace

TEST_CASE("exponent predictions") {
    auto r = predict_exponent(3, 0.5, 4);
    CHECK(r.case_tag == RegularityCase::I);
    CHECK(r.exponent == doctest::Approx(0.25));
    CHECK(r.derivative_order == 0);

    r = predict_exponent(2, 0.75, 3);
    CHECK(r.case_tag == RegularityCase::IIA);
    CHECK(r.exponent == doctest::Approx(5.0 / 6.0));

    r = predict_exponent(2, 0.75, 3, true);
    CHECK(r.case_tag == RegularityCase::IIB);
    CHECK(r.exponent == doctest::Approx(1.0 / 6.0));
    CHECK(r.derivative_order == 1);
    CHECK(r.effective_dim == 1);

    // alpha = 1 on the II.A side of p = N/(2s-1)
    r = predict_exponent(2, 0.75, 4);
    CHECK(r.case_tag == RegularityCase::IIA);
    CHECK(r.exponent == 1.0);
    CHECK(r.log_correction);
    r = predict_exponent(2, 0.75, 2, true);
    CHECK(r.log_correction);
    CHECK(predict_exponent(1, 0.5, kInfiniteP).log_correction);
    CHECK(predict_exponent(3, 1.0, kInfiniteP).case_tag == RegularityCase::IIB);
    CHECK(predict_exponent(3, 1.0, kInfiniteP).log_correction);

    CHECK(predict_exponent(3, 0.5, 3).case_tag == RegularityCase::out_of_range);
    CHECK_THROWS_AS(predict_exponent(1, 0.75, 4), DomainError);
    CHECK_THROWS_AS(predict_exponent(2, 0.5, 1.0), DomainError);
}

TEST_CASE("prediction monotonicity and radial dominance") {
    for (int n = 1; n <= 3; ++n) {
        for (double s : {0.2, 0.45, 0.7, 0.95}) {
            if (s > 0.5 * n) continue;
            double prev = -1.0;
            for (double p = 1.05; p < 200; p *= 1.3) {
                const auto r = predict_exponent(n, s, p);
                if (r.case_tag == RegularityCase::out_of_range) continue;
                CHECK(r.alpha > prev);
                prev = r.alpha;
                CHECK(r.exponent > 0.0);
                CHECK(r.exponent <= 1.0);
                if (n >= 2 && s > 0.5 * 1) {
                    CHECK(predict_exponent(n, s, p, true).alpha > r.alpha);
                }
            }
        }
    }
    for (double p : {2.5, 5.0, 20.0}) CHECK(predict_exponent(2, 0.8, p).alpha > predict_exponent(2, 0.7, p).alpha);
}

TEST_CASE("partition sweep against exact arithmetic") {
    const auto pts = exact::sweep();
    REQUIRE(pts.size() == 200);
    for (const auto& q : pts) {
        const int n = q.radial ? 1 : q.dim;
        const auto want = exact::partition(n, q.s, q.p);
        const auto got = predict_exponent(q.dim, exact::to_double(q.s), exact::to_double(q.p), q.radial);
        CHECK(got.case_tag == want.tag);
        if (want.tag != RegularityCase::out_of_range) {
            CHECK(got.log_correction == want.log_correction);
            CHECK(got.derivative_order == want.derivative_order);
        }
    }
}

TEST_CASE("bootstrap schedule") {
    const auto t = bootstrap_schedule(3, 0.5, 4);
    CHECK(t.epsilon == doctest::Approx(1.0 / 12.0));
    CHECK(t.iterations == 23);
    REQUIRE(t.q_inverses.size() == 24);
    for (int k = 0; k <= 23; ++k) CHECK(t.q_inverses[k] == doctest::Approx(1.0 - k / 24.0));
    for (std::size_t k = 1; k < t.q_inverses.size(); ++k) CHECK(t.q_inverses[k] < t.q_inverses[k - 1]);
    CHECK(t.q_inverses.back() < t.epsilon);

    const auto inf = bootstrap_schedule(1, 0.5, kInfiniteP);
    CHECK(inf.iterations == 1);
    CHECK(inf.q_inverses.back() == 0.5);
    CHECK_THROWS_AS(bootstrap_schedule(3, 0.5, 3), DomainError);

    // exact oracle: eps = 2s/N - 1/p = u/v; stop at first k with 1 - k u/(2v) < u/v, i.e. 2v - k u < 2u
    struct C {
        int n, sa, sb, p;
    };
    for (const auto& c : {C{3, 1, 2, 4}, C{2, 3, 4, 3}, C{1, 1, 4, 5}, C{3, 9, 10, 7}, C{2, 1, 1, 9}}) {
        const long u = 2L * c.sa * c.p - static_cast<long>(c.n) * c.sb, v = static_cast<long>(c.n) * c.sb * c.p;
        long k = 1;
        while (!(2 * v - k * u < 2 * u)) ++k;
        CHECK(bootstrap_schedule(c.n, double(c.sa) / c.sb, c.p).iterations == k);
    }
}

TEST_CASE("Holder fits on synthetic data") {
    for (double beta : {0.2, 0.5, 0.8}) {
        std::vector<Sample> s{{{0, 0, 0}, 0.0}};
        for (int i = 0; i < 150; ++i) {
            const double d = 1e-5 * std::pow(1e4, i / 149.0);
            s.push_back({{d, 0, 0}, std::pow(d, beta)});
            s.push_back({{-d, 0, 0}, std::pow(d, beta)});
        }
        const auto f = fit_holder_exponent(s, {0, 0, 0}, 11);
        CHECK(std::fabs(f.exponent_hat - beta) < 0.02);
        CHECK(f.pair_count >= 30);
        CHECK_FALSE(f.low_confidence);
    }
    const auto half = fit_holder_exponent(line_samples([](double x) { return std::sqrt(std::fabs(x)); }, 1e-6, 1e-2, 150),
                                          {0, 0, 0}, 5);
    CHECK(std::fabs(half.exponent_hat - 0.5) < 0.02);

    FitConfig at_center;
    at_center.near_ratio = 1e-3;
    const auto affine = fit_holder_exponent(line_samples([](double x) { return 3.0 * x + 1.0; }, 1e-6, 1e-2, 150), {0, 0, 0}, 5);
    CHECK(std::fabs(affine.exponent_hat - 1.0) < 0.01);
    CHECK_FALSE(affine.log_model_preferred);
    CHECK_FALSE(fit_holder_exponent(line_samples([](double x) { return 3.0 * x + 1.0; }, 1e-13, 1e-9, 150), {0, 0, 0}, 5,
                                    at_center)
                    .log_model_preferred);

    // the two models differ only by slow curvature in log-log space: pair with the center itself
    const auto xlog = fit_holder_exponent(
        line_samples([](double x) { return x == 0 ? 0.0 : std::fabs(x) * std::log(1 / std::fabs(x)); }, 1e-13, 1e-9, 150),
        {0, 0, 0}, 5, at_center);
    CHECK(xlog.exponent_hat > 0.95);
    CHECK(xlog.log_model_preferred);

    CHECK_THROWS_AS(fit_holder_exponent(line_samples([](double) { return 2.0; }, 1e-6, 1e-2, 150), {0, 0, 0}, 5), DataError);
    CHECK_THROWS_AS(fit_holder_exponent(line_samples([](double x) { return x; }, 1e-6, 1e-2, 40), {0, 0, 0}, 5), DataError);
}

TEST_CASE("gradient fits") {
    std::vector<VectorSample> g{{{0, 0, 0}, {0, 0, 0}}};
    std::vector<VectorSample> flat{{{0, 0, 0}, {2, 0, 0}}};
    for (int i = 0; i < 150; ++i) {
        const double d = 1e-6 * std::pow(1e4, i / 149.0);
        for (double x : {d, -d}) {
            g.push_back({{x, 0, 0}, {1.5 * std::sqrt(d) * (x > 0 ? 1 : -1), 0, 0}});
            flat.push_back({{x, 0, 0}, {2, 0, 0}});
        }
    }
    CHECK(std::fabs(fit_gradient_exponent(g, {0, 0, 0}, 9).exponent_hat - 0.5) < 0.03);
    CHECK_THROWS_AS(fit_gradient_exponent(flat, {0, 0, 0}, 9), DataError);
}

TEST_CASE("fits are seed-deterministic") {
    const auto s = line_samples([](double x) { return std::pow(std::fabs(x), 0.4) + 0.1 * x; }, 1e-6, 1e-2, 150);
    const auto a = fit_holder_exponent(s, {0, 0, 0}, 42);
    const auto b = fit_holder_exponent(s, {0, 0, 0}, 42);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    const auto c = fit_holder_exponent(s, {0, 0, 0}, 43);
    CHECK(c.exponent_hat == doctest::Approx(a.exponent_hat).epsilon(0.05));
}
