#include <doctest.h>

#include <cmath>
#include <vector>

#include "lzs/cooling.hpp"
#include "lzs/errors.hpp"
#include "lzs/rates.hpp"
#include "lzs/sweep.hpp"
#include "support.hpp"

using namespace lzs;
using lzs::test::mhz;
using lzs::test::point;
using lzs::test::rel_diff;

namespace {

struct Averages {
    double w01 = 0.0;
    double w10 = 0.0;
};

// Uniform samples over one period; exact for a cosine series with fewer
// harmonics than samples.
Averages period_average(const RateSeries& s) {
    const int n = 4 * s.harmonics() + 64;
    const double T = kTwoPi / s.omega();
    Averages a;
    for (int i = 0; i < n; ++i) {
        const RatePair r = s.at(T * i / n);
        a.w01 += r.w01;
        a.w10 += r.w10;
    }
    a.w01 /= n;
    a.w10 /= n;
    return a;
}

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("stationary rate without drive is one Lorentzian") {
    const QubitParams p = point(90, 300, 0, 90, 110);
    for (double eps : {0.0, mhz(50), mhz(-700)}) {
        const double ref = 0.5 * p.delta * p.delta * p.gamma2 / (eps * eps + p.gamma2 * p.gamma2);
        CHECK(rate_prwa(p, eps) == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("stationary rate is even in the detuning") {
    const QubitParams p = point(90, 0, 5000, 90, 110);
    for (double eps : {1.0, 31.1, 95.0, 400.2}) CHECK(rate_prwa(p, eps) == rate_prwa(p, -eps));
}

TEST_CASE("stationary rate against a wide brute-force sum") {
    // |n| <= 3 A / w summed in 30 digits, on the 55-photon resonance
    CHECK(rel_diff(rate_prwa(point(90, 4950, 5000, 90, 110), mhz(4950)), 0.0136136833136478303406781313411) <
          1e-10);
    CHECK(rel_diff(rate_prwa(point(90, 4950, 5000, 90, 1050), mhz(4950)), 0.00594252091701540470055007044994) <
          1e-10);
}

TEST_CASE("zero width on a resonance is singular") {
    const QubitParams p = point(90, 180, 5000, 90, 0);
    CHECK_THROWS_AS(rate_prwa(p, p.eps0), SingularRateError);
    CHECK_THROWS_AS(rate_nca(p, 0.0), SingularRateError);
    CHECK_THROWS_AS(RateSeries{p}, SingularRateError);
}

TEST_CASE("time-dependent rates average to the stationary rate") {
    const std::vector<QubitParams> sets = {
        point(90, 4950, 5000, 10, 110), point(90, 4950, 5000, 90, 110), point(90, 2000, 5000, 90, 3),
        point(90, 4125, 5000, 1, 1050), point(90, 4950, 10, 1, 110),    point(90, 150, 2000, 10, 40),
    };
    for (const QubitParams& p : sets) {
        const RateSeries s(p);
        const Averages a = period_average(s);
        const double ref = rate_prwa(p, p.eps0);
        CAPTURE(p.omega);
        CHECK(rel_diff(a.w01, ref) < 1e-8);
        CHECK(rel_diff(a.w10, ref) < 1e-8);
        CHECK(rel_diff(a.w01, a.w10) < 1e-8);
        CHECK(s.mean() == ref);
    }
}

namespace {

// Largest swing of the accumulated nonresonant part, int_0^t (W01 - <W01>),
// over one period: the population kick the ripple can deliver.
double ripple_kick(const QubitParams& p) {
    const RateSeries s(p);
    const int n = 8 * s.harmonics() + 256;
    const double h = p.period() / n;
    double acc = 0.0, lo = 0.0, hi = 0.0;
    double prev = s.at(0.0).w01 - s.mean();
    for (int i = 1; i <= n; ++i) {
        const double f = s.at(h * i).w01 - s.mean();
        acc += 0.5 * (f + prev) * h;
        prev = f;
        lo = std::min(lo, acc);
        hi = std::max(hi, acc);
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("fast drive averages the ripple away") {
    // W01(t) itself still swings by O(<W>) at 900 MHz; what vanishes is its
    // integrated effect, which falls like 1/w
    const double fast = ripple_kick(point(90, 4950, 5000, 900, 110));
    const double slow = ripple_kick(point(90, 4950, 5000, 10, 110));
    CHECK(fast < 1e-2);
    CHECK(slow > 10.0 * fast);
}

TEST_CASE("slow drive makes the two directions differ") {
    const QubitParams p = point(90, 4950, 5000, 10, 110);
    const RateSeries s(p);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const RatePair r = s.at(p.period() * i / 200);
        worst = std::max(worst, std::abs(r.w01 - r.w10) / std::max(r.w01, r.w10));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("rate series is insensitive to doubling its cutoffs") {
    const QubitParams p = point(90, 4950, 5000, 10, 110);
    const RateSeries base(p);
    HarmonicOptions wide;
    wide.order_cap = 2 * truncation_order(p.amp / p.omega);
    wide.harmonic_cap = 2 * std::max(base.harmonics(), 64);
    wide.drop_tol = 0.0;
    const RateSeries doubled(p, wide);
    for (int i = 0; i < 50; ++i) {
        const double t = p.period() * i / 50;
        const RatePair a = base.at(t), b = doubled.at(t);
        CHECK(rel_diff(a.w01, b.w01) < 1e-9);
        CHECK(rel_diff(a.w10, b.w10) < 1e-9);
    }
}

TEST_CASE("nonresonant part") {
    SUBCASE("vanishes without drive") {
        const QubitParams p = point(90, 300, 0, 10, 110);
        for (double t : {0.0, 13.0, 77.7}) CHECK(nonresonant_f(p, t).value == 0.0);
    }
    SUBCASE("has zero period average") {
        const QubitParams p = point(90, 4950, 5000, 10, 110);
        const double ref = rate_prwa(p, p.eps0);
        for (int k : {0, 3}) {
            const int n = 4000;
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += nonresonant_f(p, p.period() * (k + double(i) / n)).value;
            CHECK(std::abs(sum / n) < 1e-8 * ref);
        }
    }
    SUBCASE("half-shifted second harmonic flips sign") {
        // cos 2(w t + pi/2) is periodic in T/2 and odd under a T/4 shift
        const QubitParams p = point(90, 4950, 5000, 10, 110);
        const double x = p.amp / p.omega;
        const BesselRow row = bessel_row(x, truncation_order(x) + 4);
        const int n = 2, m = 55;
        const double T = p.period();
        for (double tp : {0.0, 7.0, 31.0}) {
            const double a = harmonic_term(p, row, n, m, 3 * T + tp);
            CHECK(harmonic_term(p, row, n, m, 3 * T + T / n + tp) == doctest::Approx(a).epsilon(1e-9));
            CHECK(harmonic_term(p, row, n, m, 3 * T + T / (2 * n) + tp) ==
                  doctest::Approx(-a).epsilon(1e-9));
        }
    }
}

TEST_CASE("incoherent rate") {
    const QubitParams p = point(90, 4125, 5000, 1, 1050);
    const double peak = p.delta * p.delta / (2 * p.gamma2);
    // eps0 + A sin(w t) = 0
    const double t0 = (std::asin(-p.eps0 / p.amp) + kTwoPi) / p.omega;
    CHECK(rate_nca(p, t0) == doctest::Approx(peak).epsilon(1e-12));
    for (double t : {0.0, 123.0, 777.0}) {
        CHECK(rate_nca(p, t) <= peak);
        CHECK(rate_nca(p, t + p.period()) == doctest::Approx(rate_nca(p, t)).epsilon(1e-12));
    }

    const QubitParams flat = point(90, 300, 0, 1, 110);
    for (double t : {0.0, 250.0, 999.0}) CHECK(rate_nca(flat, t) == doctest::Approx(rate_prwa(flat, flat.eps0)).epsilon(1e-14));

    const QubitParams far = point(90, 50000, 5000, 1, 110);
    const double far_peak = far.delta * far.delta / (2 * far.gamma2);
    for (int i = 0; i < 100; ++i) CHECK(rate_nca(far, far.period() * i / 100) < 1e-4 * far_peak);
}

TEST_CASE("three-level rates") {
    const ThreeLevelParams p3 = build_params(ThreeLevelRaw{});
    const double width02 = p3.gamma2 + 0.5 * p3.gamma21;
    SUBCASE("peak of the 0-2 channel") {
        // 0.09 GHz coupling, width 0.06 + 0.1/2 GHz
        CHECK(p3.delta20 * p3.delta20 / (2 * width02) ==
              doctest::Approx(0.231335459037066574724376781476).epsilon(1e-13));
        ThreeLevelDrive d = drive_from_flux(p3);
        const double t_star = std::asin(-d.eps02_dc / d.amp02) / d.omega;
        const auto r = rates_threelevel(d, CoolingMethod::NCA, t_star);
        CHECK(r.w02 == doctest::Approx(0.231335459037066574724376781476).epsilon(1e-9));
    }
    SUBCASE("closed 0-2 channel") {
        ThreeLevelParams q = p3;
        q.delta20 = 0.0;
        for (double t : {0.0, 10.0, 50.0}) {
            CHECK(rates_threelevel(q, CoolingMethod::NCA, t).w02 == 0.0);
            CHECK(rates_threelevel(q, CoolingMethod::APA, t).w02 == 0.0);
        }
    }
    SUBCASE("averaged forms ignore time") {
        ThreeLevelParams q = p3;
        q.omega = mhz(10);
        const auto a = rates_threelevel(q, CoolingMethod::APA, 0.0);
        const auto b = rates_threelevel(q, CoolingMethod::APA, 37.0);
        CHECK(a.w01 == b.w01);
        CHECK(a.w02 == b.w02);
    }
}

}
