#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace eit;

TEST_CASE("J_0(0) = 1 and higher orders vanish") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    const BesselRow row = bessel_row(12, 0.0);
    CHECK(row.values[0] == 1.0);
    for (int n = 1; n <= 12; ++n)
        CHECK(row.values[static_cast<std::size_t>(n)] == 0.0);
}

TEST_CASE("frozen values at x = 5") {
    CHECK(bessel_j(0, 5.0) == doctest::Approx(-0.177596771314338304).epsilon(1e-13));
    CHECK(bessel_j(3, 5.0) == doctest::Approx(0.364831230613666994).epsilon(1e-13));
    CHECK(bessel_j(5, 5.0) == doctest::Approx(0.261140546120170090).epsilon(1e-13));
}

TEST_CASE("agreement with the power-series oracle") {
    for (double x : {0.25, 1.0, 3.5, 5.0, 11.0, 20.0}) {
        for (int n = 0; n <= 25; ++n) {
            const double ref = tests::bessel_series(n, x);
            const double got = bessel_j(n, x);
            // Absolute comparison: the power-series oracle itself loses
            // digits to cancellation for the larger arguments.
            CHECK(std::fabs(got - ref) <= 2e-12);
        }
    }
}

TEST_CASE("symmetries hold exactly") {
    for (int n : {1, 2, 3, 7}) {
        const double x = 4.2;
        CHECK(bessel_j(-n, x) == (n % 2 ? -bessel_j(n, x) : bessel_j(n, x)));
        CHECK(bessel_j(n, -x) == (n % 2 ? -bessel_j(n, x) : bessel_j(n, x)));
    }
}

TEST_CASE("row recurrence residual below 1e-12") {
    const double x = 5.0;
    const BesselRow row = bessel_row(20, x);
    for (int n = 1; n <= 15; ++n) {
        const double lhs = row.values[static_cast<std::size_t>(n - 1)] +
                           row.values[static_cast<std::size_t>(n + 1)];
        const double rhs = (2.0 * n / x) * row.values[static_cast<std::size_t>(n)];
        CHECK(std::fabs(lhs - rhs) <=
              1e-12 * std::max(1.0, std::fabs(row.values[static_cast<std::size_t>(n)])));
    }
}

TEST_CASE("normalization identity") {
    for (double x : {0.7, 5.0, 13.0}) {
        const int n_max = static_cast<int>(x) + 14;
        const BesselRow row = bessel_row(n_max, x);
        double sum = row.values[0] * row.values[0];
        for (int n = 1; n <= n_max; ++n)
            sum += 2.0 * row.values[static_cast<std::size_t>(n)] *
                   row.values[static_cast<std::size_t>(n)];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("row rejects unstable truncations") {
    CHECK_THROWS_AS(bessel_row(10, 5.0), NumericalError);
}
