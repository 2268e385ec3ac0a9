#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <limits>

#include "lzs/errors.hpp"
#include "lzs/specfun.hpp"

using namespace lzs;

namespace {

using Wide = boost::multiprecision::cpp_dec_float_50;

// sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!) in 50 digits; enough terms for x <= 20.
double series_j(int n, double x) {
    const int order = std::abs(n);
    const Wide half = Wide(x) / 2;
    Wide term = 1;
    for (int i = 1; i <= order; ++i) term *= half / i;
    Wide sum = term;
    const Wide q = half * half;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (Wide(k) * Wide(k + order));
        sum += term;
    }
    double v = sum.convert_to<double>();
    return (n < 0 && order % 2 == 1) ? -v : v;
}

double sum_of_squares(const BesselRow& row) {
    double s = 0.0;
    for (double v : row.values()) s += v * v;
    return s;
}

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("values at zero") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(-3, 0.0) == 0.0);
    const BesselRow row = bessel_row(0.0, 10);
    for (int n = -10; n <= 10; ++n) CHECK(row[n] == (n == 0 ? 1.0 : 0.0));
}

TEST_CASE("frozen reference values") {
    CHECK(std::abs(bessel_j(1, 1.0) - 0.440050585744933515959682203719) < 1e-15);
    CHECK(std::abs(bessel_j(5, 10.0) - -0.234061528186793640443694941646) < 1e-15);
    CHECK(std::abs(bessel_j(30, 20.0) - 0.000124015363603543278653754651117) < 1e-16);
    CHECK(std::abs(bessel_j(-7, 2.5) - -0.000776553187533484954048626288012) < 1e-16);
}

TEST_CASE("agrees with the power series for x <= 20") {
    double worst = 0.0;
    for (double x : {0.05, 0.5, 1.0, 2.5, 5.0, 7.3, 10.0, 13.7, 17.0, 20.0}) {
        const BesselRow row = bessel_row(x, 30);
        for (int n = -30; n <= 30; ++n) {
            const double ref = series_j(n, x);
            worst = std::max(worst, std::abs(bessel_j(n, x) - ref));
            worst = std::max(worst, std::abs(row[n] - ref));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("row normalisation and symmetry") {
    for (double x : {0.1, 1.0, 10.0, 55.55, 100.0, 5000.0}) {
        CAPTURE(x);
        const int n_max = truncation_order(x);
        const BesselRow row = bessel_row(x, n_max);
        const double s = sum_of_squares(row);
        CHECK(s <= 1.0 + 1e-12);
        CHECK(std::abs(s - 1.0) <= 1e-10);
        double asym = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            asym = std::max(asym, std::abs(row[-n] - sign * row[n]));
        }
        CHECK(asym <= 1e-13);
    }
}

TEST_CASE("row matches single values") {
    for (double x : {0.7, 12.0, 55.55, 300.0}) {
        const BesselRow row = bessel_row(x, truncation_order(x));
        for (int n : {-40, -3, 0, 1, 2, 17, 60}) {
            if (std::abs(n) > row.n_max()) continue;
            CHECK(std::abs(row[n] - bessel_j(n, x)) <= 1e-13);
        }
    }
}

TEST_CASE("three-term recurrence") {
    const double x = 10.0;
    const int n = 5;
    CHECK(std::abs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2.0 * n / x * bessel_j(n, x)) <= 1e-10);
    const BesselRow row = bessel_row(5000.0, truncation_order(5000.0));
    for (int k : {1, 100, 2500, 4990, 5050}) {
        CHECK(std::abs(row[k - 1] + row[k + 1] - 2.0 * k / 5000.0 * row[k]) <= 1e-10);
    }
}

TEST_CASE("truncation order") {
    CHECK(truncation_order(0.0) == 20);
    CHECK(truncation_order(1.0) == 1 + 20 + 10);
    CHECK(truncation_order(55.55) == 56 + 20 + 39);
    // the tail past the cutoff is negligible
    for (double x : {1.0, 100.0, 5000.0}) CHECK(std::abs(bessel_j(truncation_order(x), x)) < 1e-15);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(bessel_j(0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(1'000'001, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_row(1.0, -1), DomainError);
    CHECK(bessel_j(1'000'000, 1.0) == 0.0);
}

}
