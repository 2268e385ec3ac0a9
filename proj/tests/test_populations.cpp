#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lzs/bloch.hpp"
#include "lzs/errors.hpp"
#include "lzs/populations.hpp"
#include "lzs/rates.hpp"
#include "support.hpp"

using namespace lzs;
using lzs::test::mhz;
using lzs::test::point;

namespace {

void check_probabilities(const std::vector<double>& v) {
    for (double x : v) {
        CHECK(x >= -1e-9);
        CHECK(x <= 1.0 + 1e-9);
    }
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_SUITE("populations") {

TEST_CASE("coherent RWA") {
    const QubitParams p = point(90, 90, 5000, 90, 0);
    CHECK(pop_rwa_coherent(p, 0.0) == 0.0);

    SUBCASE("full flop on resonance") {
        const QubitParams still = point(90, 0, 0, 90, 0);
        CHECK(pop_rwa_coherent(still, kTwoPi / 2 / still.delta) == doctest::Approx(1.0).epsilon(1e-12));
        // one-photon resonance far from the others: J_1(0.4) coupling
        const QubitParams one = point(90, 5000, 2000, 5000, 0);
        const double t = kTwoPi / 2 / (one.delta * std::abs(bessel_j(1, 0.4)));
        CHECK(std::abs(pop_rwa_coherent(one, t) - 1.0) < 2e-3);
    }

    SUBCASE("follows the coherent oracle once the drive ripple is averaged out") {
        QubitParams q = p;
        q.gamma01 = q.gamma10 = 0.0;
        const int per_period = 40;
        const double T = q.period();
        std::vector<double> grid;
        for (int i = 0; i <= 200 * per_period / T + per_period; ++i) grid.push_back(i * T / per_period);
        const Trajectory tr = integrate(q, DensityState::ground1(), grid.back(), grid);
        double worst = 0.0;
        for (std::size_t i = 0; i + per_period < grid.size(); ++i) {
            // one-period running mean centred on the sample
            double s = 0.0;
            for (int k = 0; k < per_period; ++k) s += tr.states[i + k].rho00;
            const double t_mid = grid[i] + 0.5 * T * (per_period - 1) / per_period;
            if (t_mid > 200.0) break;
            worst = std::max(worst, std::abs(s / per_period - pop_rwa_coherent(q, t_mid)));
        }
        CHECK(worst <= 0.1);
    }
}

TEST_CASE("stationary RWA") {
    SUBCASE("single term without drive") {
        const QubitParams p = point(90, 0, 0, 90, 110);
        const double w = p.delta * p.delta / p.gamma2;
        const double ref = (0.5 * w + p.gamma10) / (w + p.gamma01 + p.gamma10);
        CHECK(pop_rwa_stationary(p) == doctest::Approx(ref).epsilon(1e-13));
    }
    SUBCASE("saturates at one half") {
        // 10 GHz coupling against microsecond relaxation, one isolated resonance
        const QubitParams p = point(10000, 0, 0, 90, 110);
        CHECK(std::abs(pop_rwa_stationary(p) - 0.5) < 1e-3);
    }
    SUBCASE("overlapping resonances can exceed one") {
        bool above = false;
        for (double eps = 0; eps <= 6000 && !above; eps += 30) above = pop_rwa_stationary(point(90, eps, 5000, 90, 110)) > 1.0;
        CHECK(above);
    }
    SUBCASE("agrees with the perturbative ratio when one narrow resonance dominates") {
        // one-photon line of width 1 MHz, neighbours 900 MHz away
        const QubitParams p = point(1, 900, 500, 900, 1);
        CHECK(pop_prwa_stationary(p) > thermal_population(p) + 0.05);
        CHECK(pop_prwa_stationary(p) < 0.45);
        CHECK(std::abs(pop_rwa_stationary(p) - pop_prwa_stationary(p)) < 1e-3);
    }
}

TEST_CASE("perturbative and averaged closed forms") {
    const QubitParams strong = point(20000, 300, 5000, 90, 110);
    CHECK(std::abs(pop_prwa_stationary(strong) - 0.5) < 1e-3);
    CHECK(std::abs(pop_apa(strong) - 0.5) < 1e-3);

    QubitParams none = point(90, 300, 5000, 90, 110);
    none.delta = 0.0;
    CHECK(pop_prwa_stationary(none) == doctest::Approx(thermal_population(none)).epsilon(1e-14));
    CHECK(pop_apa(none) == doctest::Approx(thermal_population(none)).epsilon(1e-14));

    for (double eps = -6000; eps <= 6000; eps += 250) {
        const double v = pop_prwa_stationary(point(90, eps, 5000, 90, 110));
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("time-dependent rate equations") {
    SUBCASE("pure relaxation without coupling") {
        QubitParams p = point(90, 300, 5000, 10, 110);
        p.delta = 0.0;
        const PopulationCurve c = pop_timedep(p, 6000.0, 1.0);
        const double eq = thermal_population(p), k = p.gamma01 + p.gamma10;
        double worst = 0.0;
        for (std::size_t i = 0; i < c.times.size(); ++i)
            worst = std::max(worst, std::abs(c.rho00[i] - (eq + (1.0 - eq) * std::exp(-k * c.times[i]))));
        CHECK(worst < 1e-8);
    }
    SUBCASE("slow drive: periodic steady curve close to the oracle average") {
        const QubitParams p = point(90, 4950, 5000, 10, 110);
        const RateSteadyState s = timedep_steady(p);
        REQUIRE(s.converged);
        CHECK(s.times.back() - s.times.front() == doctest::Approx(p.period()).epsilon(1e-12));
        CHECK(std::abs(s.rho00.front() - s.rho00.back()) < 1e-7);
        check_probabilities(s.rho00);
        const PeriodicSteadyState oracle = steady_state_floquet(p);
        CHECK(std::abs(s.avg_rho00 - oracle.avg_rho00) <= 0.03);
        // drive much faster than the mean rate: averaged picture holds
        CHECK(p.omega > 3.0 * rate_prwa(p, p.eps0));
        CHECK(std::abs(s.avg_rho00 - pop_apa(p)) < 1e-3);
    }
    SUBCASE("fast drive: flat and equal to the stationary ratio") {
        const QubitParams p = point(90, 4950, 5000, 900, 110);
        const RateSteadyState s = timedep_steady(p);
        // residual ripple ~ |f| / w, against ~0.75 at 10 MHz
        CHECK(s.peak_to_peak < 5e-3);
        CHECK(std::abs(s.avg_rho00 - pop_prwa_stationary(p)) < 1e-3);
    }
    SUBCASE("fixed point matches the long-horizon settling") {
        const QubitParams p = point(90, 4950, 5000, 90, 110);
        RateSteadyOptions lh;
        lh.long_horizon = true;
        const RateSteadyState a = timedep_steady(p), b = timedep_steady(p, lh);
        CHECK(b.converged);
        CHECK(std::abs(a.avg_rho00 - b.avg_rho00) < 1e-5);
    }
    SUBCASE("closed form matches the ODE") {
        const QubitParams p = point(90, 4950, 5000, 10, 110);
        const PopulationCurve ode = pop_timedep(p, 500.0, 1.0);
        const PopulationCurve quad = pop_timedep_closed_form(p, 500.0, 1.0);
        CHECK(max_abs_diff(ode.rho00, quad.rho00) < 1e-6);
        check_probabilities(ode.rho00);
    }
}

TEST_CASE("incoherent rate equations") {
    SUBCASE("symmetric rates without relaxation") {
        QubitParams p = point(90, 4125, 5000, 1, 1050);
        p.gamma01 = p.gamma10 = 0.0;
        const PopulationCurve c = pop_nca(p, 1500.0, 1.0);
        // exp(-2 int W) by fine trapezoid
        double integral = 0.0, t_prev = 0.0, w_prev = rate_nca(p, 0.0);
        double worst = 0.0;
        const int fine = 200;
        for (std::size_t i = 0; i < c.times.size(); ++i) {
            const double t = c.times[i];
            for (int k = 1; k <= fine && t > t_prev; ++k) {
                const double s = t_prev + (t - t_prev) * k / fine;
                const double w = rate_nca(p, s);
                integral += 0.5 * (w + w_prev) * (t - t_prev) / fine;
                w_prev = w;
            }
            t_prev = t;
            worst = std::max(worst, std::abs(c.rho00[i] - 0.5 * (1.0 + std::exp(-2.0 * integral))));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("closed form matches the ODE") {
        const QubitParams p = point(90, 4125, 5000, 1, 1050);
        const PopulationCurve ode = pop_nca(p, 3000.0, 1.0);
        const PopulationCurve quad = pop_nca_closed_form(p, 3000.0, 1.0);
        CHECK(max_abs_diff(ode.rho00, quad.rho00) < 1e-6);
        check_probabilities(quad.rho00);
    }
    SUBCASE("constant rate without drive") {
        const QubitParams p = point(90, 300, 0, 1, 110);
        const RateSteadyState s = nca_steady(p);
        CHECK(std::abs(s.avg_rho00 - pop_apa(p)) < 1e-6);
    }
}

TEST_CASE("curve inputs are validated") {
    const QubitParams p = point(90, 4125, 5000, 1, 1050);
    CHECK_THROWS_AS(pop_nca(p, 10.0, 1.5), ValidationError);
    CHECK_THROWS_AS(pop_nca(p, std::vector<double>{0.0, 2.0, 1.0}, 1.0), ValidationError);
    CHECK_THROWS_AS(pop_nca(p, std::vector<double>{-1.0, 0.0}, 1.0), ValidationError);
    const PopulationCurve c = pop_nca(p, std::vector<double>{0.0, 0.0, 5.0}, 0.25);
    CHECK(c.rho00[0] == 0.25);
    CHECK(c.rho00[1] == 0.25);
}

TEST_CASE("end-aligned grid") {
    const auto even = end_aligned_grid(10.0, 4.0, 4);
    CHECK(even.size() == 11);
    CHECK(even.front() == 0.0);
    CHECK(even.back() == 10.0);
    const auto odd = end_aligned_grid(10.5, 4.0, 4);
    REQUIRE(odd.size() == 12);
    CHECK(odd[0] == 0.0);
    CHECK(odd[1] == doctest::Approx(0.5));
    CHECK(odd.back() == 10.5);
}

}
