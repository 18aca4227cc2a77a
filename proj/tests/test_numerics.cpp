#include "oracles.hpp"

#include "rissop/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

using namespace rissop;

TEST_CASE("QApprox constants") {
    CHECK(QApprox::weights[0] == 1.0 / 6.0);
    CHECK(QApprox::weights[1] == 1.0 / 3.0);
    CHECK(QApprox::weights[2] == 1.0 / 3.0);
    CHECK(QApprox::exponents[0] == 1.0);
    CHECK(QApprox::exponents[1] == 4.0);
    CHECK(QApprox::exponents[2] == 4.0 / 3.0);
    const double sum = std::accumulate(QApprox::weights.begin(), QApprox::weights.end(), 0.0);
    CHECK(sum == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("q_exact values") {
    CHECK(q_exact(0.0) == 0.5);
    const double far = q_exact(40.0);
    CHECK(std::isfinite(far));
    CHECK(far < 1e-300);
    CHECK(far >= 0.0);
    CHECK(q_exact(1.0) == doctest::Approx(oracle::normal_tail(1.0)).epsilon(1e-12));
    CHECK(q_exact(1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
    for (double x : {-3.0, 0.5, 2.0, 5.0, 8.0}) {
        CHECK(q_exact(x) == doctest::Approx(oracle::normal_tail(x)).epsilon(1e-10));
    }
}

TEST_CASE("q_exact symmetry and monotonicity on a dense grid") {
    double prev = 1.0;
    double worst = 0.0;
    for (int i = -6000; i <= 6000; ++i) {
        const double x = i * 1e-3;
        worst = std::max(worst, std::abs(q_exact(x) + q_exact(-x) - 1.0));
        const double q = q_exact(x);
        CHECK_MESSAGE(q <= prev, "x=" << x);
        prev = q;
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("q_approx branches") {
    CHECK(q_approx(0.0) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    double expected = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        expected += QApprox::weights[i] / 2.0 * std::exp(-QApprox::exponents[i] * 4.5);
    }
    CHECK(q_approx(3.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(q_approx(3.0) - q_exact(3.0)) < 0.02);
    CHECK(q_approx(-2.0) == doctest::Approx(1.0 - q_approx(2.0)).epsilon(1e-15));
}

TEST_CASE("q_approx relative error envelope on [0.5, 6]" * doctest::may_fail()) {
    double worst = 0.0;
    for (double x = 0.5; x <= 6.0 + 1e-12; x += 1e-3) {
        worst = std::max(worst, std::abs(q_approx(x) - q_exact(x)) / q_exact(x));
    }
    CHECK(worst < 0.25);
}

TEST_CASE("non-finite inputs are rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(q_exact(nan), std::domain_error);
    CHECK_THROWS_AS(q_exact(inf), std::domain_error);
    CHECK_THROWS_AS(q_approx(-inf), std::domain_error);
    CHECK_THROWS_AS(erf_std(nan), std::domain_error);
    CHECK_THROWS_AS(expint_ei(-inf), std::domain_error);
    CHECK_THROWS_AS(upper_gamma_neg1(inf), std::domain_error);
}

TEST_CASE("expint_ei against the e^{-t}/t oracle") {
    CHECK(expint_ei(-1.0) == doctest::Approx(-0.219383934395520).epsilon(1e-12));
    CHECK(expint_ei(-0.5) == doctest::Approx(-0.559773594776161).epsilon(1e-12));
    for (double x : {0.1, 0.5, 1.0, 5.0, 5.99, 6.0, 6.01, 20.0, 50.0}) {
        CHECK_MESSAGE(std::abs(expint_ei(-x) + oracle::e1(x)) < 1e-9 * oracle::e1(x), "x=" << x);
    }
    const double v = expint_ei(-20.0);
    CHECK(v < 0.0);
    CHECK(std::abs(v) < std::exp(-20.0) / 20.0);
}

TEST_CASE("expint_ei domain and monotonicity") {
    CHECK_THROWS_AS(expint_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_ei(1.0), std::domain_error);
    // Ei'(x) = e^x / x < 0: the value falls toward -inf as x rises to 0.
    double prev = expint_ei(-40.0);
    for (double x = -39.5; x < 0.0; x += 0.5) {
        const double v = expint_ei(x);
        CHECK(v < 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("scaled exponential integral") {
    for (double x : {0.01, 1.0, 5.9, 6.1, 30.0, 700.0}) {
        CHECK(expint_e1_scaled(x) == doctest::Approx(std::exp(x) * oracle::e1(x)).epsilon(1e-9));
    }
    CHECK(expint_e1_scaled(1e6) == doctest::Approx(1.0 / (1e6 + 1.0)).epsilon(1e-9));
}

TEST_CASE("upper_gamma_neg1 against the t^{-2}e^{-t} oracle") {
    CHECK(upper_gamma_neg1(1.0) == doctest::Approx(0.148495506775922).epsilon(1e-12));
    CHECK(upper_gamma_neg1(1.0) ==
          doctest::Approx(std::exp(-1.0) + expint_ei(-1.0)).epsilon(1e-14));
    for (double x : {0.1, 0.5, 1.0, 5.0, 10.0, 20.0}) {
        CHECK_MESSAGE(std::abs(upper_gamma_neg1(x) - oracle::gamma_neg1(x)) <
                          1e-9 * oracle::gamma_neg1(x),
                      "x=" << x);
    }
    CHECK(upper_gamma_neg1(10.0) == doctest::Approx(oracle::gamma_neg1(10.0)).epsilon(1e-10));
    for (double x : {1.5, 3.0, 10.0, 40.0}) {
        CHECK(upper_gamma_neg1(x) > 0.0);
        CHECK(upper_gamma_neg1(x) < std::exp(-x));
        CHECK(upper_gamma_neg1(x) < std::exp(-x) / x);
    }
    CHECK_THROWS_AS(upper_gamma_neg1(0.0), std::domain_error);
    CHECK_THROWS_AS(upper_gamma_neg1(-1.0), std::domain_error);
}

TEST_CASE("upper_gamma_neg1_scaled") {
    for (double x : {0.2, 3.0, 25.0}) {
        CHECK(upper_gamma_neg1_scaled(x) ==
              doctest::Approx(std::exp(x) * oracle::gamma_neg1(x)).epsilon(1e-9));
    }
}

TEST_CASE("erf_std") {
    CHECK(erf_std(0.0) == 0.0);
    CHECK(erf_std(1.0) == doctest::Approx(1.0 - 2.0 * q_exact(std::sqrt(2.0))).epsilon(1e-12));
    CHECK(erf_std(1.0) == doctest::Approx(0.842700792949715).epsilon(1e-12));
    for (double x = -4.0; x <= 4.0; x += 0.25) {
        CHECK(erf_std(-x) == -erf_std(x));
        CHECK(std::abs(erf_std(x) - (1.0 - 2.0 * q_exact(x * std::sqrt(2.0)))) < 1e-13);
    }
}
