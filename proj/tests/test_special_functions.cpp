#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdm/errors.hpp"
#include "pdm/special_functions.hpp"

using namespace pdm;

namespace {

// L_n^(alpha)(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!, binomials via lgamma-free products
double laguerre_sum(int n, double alpha, double x) {
    long double s = 0.0L;
    for (int k = 0; k <= n; ++k) {
        long double binom = 1.0L;  // C(n+alpha, n-k) = prod_{j=1}^{n-k} (alpha+k+j)/j
        for (int j = 1; j <= n - k; ++j) binom *= (alpha + k + j) / static_cast<long double>(j);
        long double term = binom * std::pow(static_cast<long double>(x), k) / std::tgamma(k + 1.0L);
        s += (k % 2 ? -term : term);
    }
    return static_cast<double>(s);
}

}  // namespace

TEST_CASE("kummer_poly small cases") {
    CHECK(kummer_poly(0, 2.5, 7.3) == 1.0);
    CHECK(kummer_poly(1, 2.0, 3.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(kummer_poly(2, 3.0, 1.5) == doctest::Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("kummer_poly matches the series coefficients") {
    PolySeries p = kummer_series(5, 1.7);
    CHECK(p.degree == 5);
    CHECK(p.coefficients.size() == 6u);
    for (double x : {0.0, 0.3, 2.0, 9.5}) CHECK(p(x) == doctest::Approx(kummer_poly(5, 1.7, x)).epsilon(1e-13));
}

TEST_CASE("kummer_poly pole") {
    CHECK_THROWS_AS(kummer_poly(3, -1.0, 1.0), PoleError);
    CHECK_THROWS_AS(kummer_poly(2, 0.0, 1.0), PoleError);
    CHECK_NOTHROW(kummer_poly(1, -1.0, 1.0));  // (b)_0 only
    CHECK_THROWS_AS(kummer_poly(-1, 2.0, 1.0), ParameterError);
}

TEST_CASE("laguerre small cases") {
    CHECK(laguerre(1, 0.0, 2.0) == doctest::Approx(-1.0));
    CHECK(laguerre(0, 3.7, 9.0) == 1.0);
    CHECK(laguerre(2, 0.0, 1.0) == doctest::Approx(-0.5));
}

TEST_CASE("laguerre agrees with explicit sum") {
    for (int n = 0; n <= 10; ++n)
        for (double alpha : {0.0, 0.5, 1.0, 2.3})
            for (double x : {0.0, 0.7, 3.1, 8.0}) {
                double ref = laguerre_sum(n, alpha, x);
                CHECK(std::abs(laguerre(n, alpha, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));  // the sum alternates
            }
}

TEST_CASE("kummer-laguerre identity on the lattice") {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        for (double alpha : {0.0, 0.5, 1.0, 2.3})
            for (int i = 0; i <= 200; ++i) {
                double x = 0.1 * i;
                double lhs = laguerre(n, alpha, x);
                double rhs = pochhammer(alpha + 1.0, n) / std::tgamma(n + 1.0) * kummer_poly(n, alpha + 1.0, x);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == 360.0);
    CHECK(pochhammer(-2.0, 3) == 0.0);
}

TEST_CASE("adaptive_quad") {
    CHECK(adaptive_quad([](double) { return 1.0; }, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(adaptive_quad([](double x) { return 1.0 / std::sqrt(1.0 + x * x); }, 0.0, 1.0) ==
          doctest::Approx(std::asinh(1.0)).epsilon(1e-12));
    CHECK(adaptive_quad([](double x) { return x * x; }, -1.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(adaptive_quad([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-11));
    CHECK(adaptive_quad([](double x) { return x; }, 1.0, 1.0) == 0.0);
}

TEST_CASE("adaptive_quad errors") {
    CHECK_THROWS_AS(adaptive_quad([](double) { return 1.0; }, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(adaptive_quad([](double) { return 1.0; }, 0.0, 1.0, -1.0), ParameterError);
    CHECK_THROWS_AS(adaptive_quad([](double x) { return std::log(x - 0.5); }, 0.0, 1.0), SingularityError);
    CHECK_THROWS_AS(adaptive_quad([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0, 1.0, 1e-14, 8),
                    ConvergenceError);
}
