#include "lzs/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lzs/errors.hpp"
#include "lzs/ode.hpp"
#include "lzs/periodic.hpp"

namespace lzs {

namespace {

struct ConstantRates {
    ThreeLevelRates r;
    ThreeLevelRates operator()(double) const { return r; }
};

struct SweptRates {
    ThreeLevelDrive d;
    ThreeLevelRates operator()(double t) const { return rates_threelevel(d, CoolingMethod::NCA, t); }
};

// State (rho00, rho11); rho22 = 1 - rho00 - rho11.
template <class Rates>
struct ThreeLevelRhs {
    Rates rates;
    double g01;
    double g10;
    double g21;
    void operator()(double t, const State<2>& y, State<2>& dy) const {
        const ThreeLevelRates w = rates(t);
        const double r22 = 1.0 - y[0] - y[1];
        dy[0] = -(w.w01 + g01 + w.w02) * y[0] + (w.w01 + g10) * y[1] + w.w02 * r22;
        dy[1] = (w.w01 + g01) * y[0] - (w.w01 + g10) * y[1] + g21 * r22;
    }
};

// Three copies of the system started from (0,0), (1,0) and (0,1); the
// one-period map is affine so these fix it completely.
template <class Rhs>
struct TripleRhs {
    Rhs one;
    void operator()(double t, const State<6>& y, State<6>& dy) const {
        for (int k = 0; k < 3; ++k) {
            State<2> d{};
            one(t, State<2>{y[2 * k], y[2 * k + 1]}, d);
            dy[2 * k] = d[0];
            dy[2 * k + 1] = d[1];
        }
    }
};

ThreeLevelState unpack(const State<2>& y) { return {y[0], y[1], 1.0 - y[0] - y[1]}; }

template <class Rhs>
CoolingResult fixed_point(Rhs rhs, double period, const OdeOptions& ode, int samples) {
    State<6> y{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    {
        DormandPrince<6> solver(ode);
        double t = 0.0;
        TripleRhs<Rhs> triple{rhs};
        solver.advance(triple, t, y, period);
    }
    // x(T) = M x(0) + c
    const double c0 = y[0], c1 = y[1];
    const double m00 = y[2] - c0, m10 = y[3] - c1;
    const double m01 = y[4] - c0, m11 = y[5] - c1;
    const double a00 = 1.0 - m00, a01 = -m01, a10 = -m10, a11 = 1.0 - m11;
    const double det = a00 * a11 - a01 * a10;
    State<2> start{(a11 * c0 - a01 * c1) / det, (a00 * c1 - a10 * c0) / det};

    DormandPrince<2> solver(ode);
    double t = 0.0;
    State<2> state = start;
    std::vector<State<2>> states;
    CoolingResult out;
    integrate_period(solver, rhs, t, state, 0.0, period, samples, out.times, states);
    std::vector<double> r0, r1;
    for (const auto& s : states) {
        out.waveform.push_back(unpack(s));
        r0.push_back(s[0]);
        r1.push_back(s[1]);
    }
    out.state = {trapezoid_average(r0), trapezoid_average(r1), 0.0};
    out.state.rho22 = 1.0 - out.state.rho00 - out.state.rho11;
    const double closure = std::max(std::abs(states.back()[0] - start[0]), std::abs(states.back()[1] - start[1]));
    out.converged = std::isfinite(det) && det != 0.0 && std::isfinite(closure) && closure < 1e-8;
    return out;
}

template <class Rhs>
CoolingResult long_horizon(Rhs rhs, double period, State<2> start, double t1, const OdeOptions& ode,
                           const CoolingOptions& opts) {
    PeriodicOptions po;
    po.samples_per_period = opts.samples_per_period;
    po.drift_tol = opts.drift_tol;
    po.drift_periods = opts.drift_periods;
    po.min_time = opts.min_t1_multiple * t1;
    po.cap_time = std::max(opts.cap_t1_multiple * t1, (opts.drift_periods + 1) * period);
    auto run = run_to_periodic<2>(rhs, start, period, [](const State<2>& s) { return s[0]; }, po, ode);
    CoolingResult out;
    out.times = run.times;
    std::vector<double> r1;
    for (const auto& s : run.states) {
        out.waveform.push_back(unpack(s));
        r1.push_back(s[1]);
    }
    out.state = {run.avg, trapezoid_average(r1), 1.0 - run.avg - trapezoid_average(r1)};
    out.converged = run.converged;
    return out;
}

// Shortest time over which an instantaneous Lorentzian changes appreciably.
double sweep_feature_time(const ThreeLevelDrive& d, double period) {
    double feature = period;
    if (d.amp01 > 0.0 && d.delta01 > 0.0) feature = std::min(feature, d.gamma2 / (d.amp01 * d.omega));
    if (d.amp02 > 0.0 && d.delta20 > 0.0)
        feature = std::min(feature, (d.gamma2 + 0.5 * d.gamma21) / (d.amp02 * d.omega));
    return feature;
}

}  // namespace

FluxDetuning eps_from_flux(const ThreeLevelParams& p, double phi) {
    return {(p.m0 + p.m1) * phi, (p.m0 + p.m2) * (phi - p.phi20)};
}

ThreeLevelDrive drive_from_flux(const ThreeLevelParams& p) {
    const FluxDetuning dc = eps_from_flux(p, p.phi_dc);
    ThreeLevelDrive d;
    d.delta01 = p.delta01;
    d.delta20 = p.delta20;
    d.eps01_dc = dc.eps01;
    d.eps02_dc = dc.eps02;
    d.amp01 = (p.m0 + p.m1) * p.phi_rf;
    d.amp02 = (p.m0 + p.m2) * p.phi_rf;
    d.omega = p.omega;
    d.gamma2 = p.gamma2;
    d.gamma21 = p.gamma21;
    return d;
}

ThreeLevelRates rates_threelevel(const ThreeLevelParams& p, CoolingMethod method, double t) {
    validate(p);
    return rates_threelevel(drive_from_flux(p), method, t);
}

double equilibrium_rho00(const ThreeLevelParams& p) {
    return thermal_population(eps_from_flux(p, p.phi_dc).eps01, p.temperature);
}

CoolingResult cool_steady(const ThreeLevelParams& p, CoolingMethod method, const CoolingOptions& opts) {
    validate(p);
    if (opts.samples_per_period < 2) throw ValidationError("samples_per_period", "must be at least 2");
    const ThreeLevelDrive drive = drive_from_flux(p);
    if (method == CoolingMethod::NCA && drive.gamma2 == 0.0 && (drive.delta01 > 0.0 || drive.delta20 > 0.0))
        throw SingularRateError("incoherent rates need gamma2 > 0");
    const InterwellRates relax = detailed_balance(drive.eps01_dc, p.temperature, p.t1);
    const double period = p.period();
    const double eq = equilibrium_rho00(p);
    const State<2> thermal{eq, 1.0 - eq};

    OdeOptions ode;
    ode.rtol = opts.rtol;
    ode.atol = opts.atol;
    ode.h_max = period / opts.samples_per_period;

    if (method == CoolingMethod::APA) {
        // Averaged rates do not depend on time; evaluate the Bessel sums once.
        const ThreeLevelRhs<ConstantRates> rhs{{rates_threelevel(drive, method, 0.0)},
                                               relax.gamma01, relax.gamma10, p.gamma21};
        if (opts.long_horizon) return long_horizon(rhs, period, thermal, p.t1, ode, opts);
        return fixed_point(rhs, period, ode, opts.samples_per_period);
    }
    ode.h_max = std::min(ode.h_max, 0.5 * sweep_feature_time(drive, period));
    const ThreeLevelRhs<SweptRates> rhs{{drive}, relax.gamma01, relax.gamma10, p.gamma21};
    if (opts.long_horizon) return long_horizon(rhs, period, thermal, p.t1, ode, opts);
    return fixed_point(rhs, period, ode, opts.samples_per_period);
}

double min_cooling_frequency(const ThreeLevelParams& p, double phi_rf, FrequencyRange range, double margin,
                             CoolingMethod method, const CoolingOptions& opts) {
    if (!(margin > 0.0) || !std::isfinite(margin)) throw ValidationError("cooling_margin", "must be positive");
    if (!(range.lo > 0.0) || !std::isfinite(range.hi) || !(range.hi >= 10.0 * range.lo))
        throw ValidationError("freq_range", "must be positive and span at least one decade");
    ThreeLevelParams q = p;
    q.phi_rf = phi_rf;
    validate(q);
    const double eq = equilibrium_rho00(q);
    auto deficit = [&](double omega) {
        q.omega = omega;
        const CoolingResult r = cool_steady(q, method, opts);
        if (!r.converged) {
            std::ostringstream msg;
            msg << "cooling steady state did not converge at omega = " << omega << " rad/ns";
            throw IntegrationError(q.period(), msg.str());
        }
        return eq - r.state.rho00;
    };

    double lo = range.lo, hi = range.hi;
    const double d_lo = deficit(lo), d_hi = deficit(hi);
    if (!(d_hi >= margin) || d_lo >= margin) {
        std::ostringstream msg;
        msg << "cooling criterion not bracketed: deficit " << d_lo << " at omega " << lo << ", " << d_hi
            << " at omega " << hi << " (margin " << margin << ")";
        throw BracketError(msg.str());
    }
    // Invariant: deficit(lo) < margin <= deficit(hi).
    while (hi / lo > 1.0 + 1e-4) {
        const double mid = std::sqrt(lo * hi);
        if (deficit(mid) >= margin)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace lzs
