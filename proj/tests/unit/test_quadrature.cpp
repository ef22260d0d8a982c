#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/special_functions.hpp"
#include "fraclab/spherical.hpp"

using namespace fraclab;

TEST_CASE("adaptive Gauss-Kronrod") {
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(std::fabs(r.value - 2.0) < 1e-13);
    CHECK(r.converged);
    r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-12, 1e-12, 4000});
    CHECK(std::fabs(r.value - 2.0) < 1e-10);
    r = integrate([](double x) { return std::log(std::fabs(x - 0.3)); }, 0.0, 1.0, {1e-12, 1e-12, 4000}, {0.3});
    const double want = 0.7 * std::log(0.7) - 0.7 + 0.3 * std::log(0.3) - 0.3;
    CHECK(std::fabs(r.value - want) < 1e-10);
    r = integrate([](double x) { return x; }, 1.0, 0.0);
    CHECK(std::fabs(r.value + 0.5) < 1e-15);
}

TEST_CASE("tails and log variable") {
    auto r = integrate_tail([](double x) { return 1.0 / (x * x); }, 2.0);
    CHECK(std::fabs(r.value - 0.5) < 1e-12);
    r = integrate_tail([](double x) { return std::pow(x, -1.3); }, 1.0, {1e-11, 1e-11, 4000});
    CHECK(std::fabs(r.value - 1 / 0.3) < 1e-8);
    r = integrate_log([](double x) { return 1.0 / x; }, 1e-6, 1e6);
    CHECK(std::fabs(r.value - 12 * std::log(10.0)) < 1e-11);
}

TEST_CASE("Gauss-Legendre rules are exact for polynomials") {
    for (int n : {1, 2, 5, 8, 12, 20}) {
        const auto g = gauss_legendre(n);
        for (int k = 0; k < 2 * n; ++k) {
            double sum = 0;
            for (int i = 0; i < n; ++i) sum += g.weights[i] * std::pow(g.nodes[i], k);
            const double want = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
            CHECK(std::fabs(sum - want) < 1e-14);
        }
    }
}

TEST_CASE("sphere integrals") {
    QuadOptions opt{1e-12, 1e-12, 4000};
    for (int n = 1; n <= 3; ++n) {
        const double s = n == 1 ? 2.0 : (n == 2 ? 2 * kPi : 4 * kPi);
        const auto one = sphere_integral(n, [](const Point&) { return 1.0; }, {0.3, 0.4, 0.5}, opt);
        CHECK(std::fabs(one.value - s) < 1e-12);
        const auto sq = sphere_integral(n, [](const Point& w) { return w[0] * w[0]; }, {0.3, -0.4, 0.5}, opt);
        CHECK(std::fabs(sq.value - s / n) < 1e-11);
    }
}

TEST_CASE("parallel_for visits each index once and rethrows the lowest failure") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_WITH(parallel_for(100, [](std::size_t i) {
                          if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
                      }),
                      "17");
}
