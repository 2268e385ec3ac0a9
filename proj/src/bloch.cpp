#include "lzs/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "lzs/errors.hpp"
#include "lzs/periodic.hpp"

namespace lzs {

namespace {

using Bloch4 = State<4>;

Bloch4 pack(const DensityState& s) { return {s.rho00, s.rho11, s.coh_re, s.coh_im}; }
DensityState unpack(const Bloch4& y) { return {y[0], y[1], y[2], y[3]}; }

struct LabRhs {
    const QubitParams& p;
    void operator()(double t, const Bloch4& y, Bloch4& dy) const {
        const double eps = p.eps0 + p.amp * std::sin(p.omega * t);
        const double transfer = p.delta * y[3];
        const double relax = -p.gamma01 * y[0] + p.gamma10 * y[1];
        dy[0] = transfer + relax;
        dy[1] = -transfer - relax;
        dy[2] = eps * y[3] - p.gamma2 * y[2];
        dy[3] = -eps * y[2] + 0.5 * p.delta * (y[1] - y[0]) - p.gamma2 * y[3];
    }
};

// Accumulated phase theta(t) = int_0^t eps; the lab coherence is
// rho01 = rho01_gauge * exp(-i theta).
double gauge_phase(const QubitParams& p, double t) {
    return p.eps0 * t + (p.amp / p.omega) * (1.0 - std::cos(p.omega * t));
}

struct GaugeRhs {
    const QubitParams& p;
    void operator()(double t, const Bloch4& y, Bloch4& dy) const {
        const double theta = gauge_phase(p, t);
        const double c = std::cos(theta), s = std::sin(theta);
        const double lab_im = y[3] * c - y[2] * s;
        const double transfer = p.delta * lab_im;
        const double relax = -p.gamma01 * y[0] + p.gamma10 * y[1];
        const double inversion = y[1] - y[0];
        dy[0] = transfer + relax;
        dy[1] = -transfer - relax;
        dy[2] = -0.5 * p.delta * s * inversion - p.gamma2 * y[2];
        dy[3] = 0.5 * p.delta * c * inversion - p.gamma2 * y[3];
    }
};

Bloch4 lab_to_gauge(const QubitParams& p, double t, const Bloch4& y) {
    const double theta = gauge_phase(p, t);
    const double c = std::cos(theta), s = std::sin(theta);
    // rho01_gauge = rho01_lab * exp(+i theta)
    return {y[0], y[1], y[2] * c - y[3] * s, y[2] * s + y[3] * c};
}

Bloch4 gauge_to_lab(const QubitParams& p, double t, const Bloch4& y) {
    const double theta = gauge_phase(p, t);
    const double c = std::cos(theta), s = std::sin(theta);
    return {y[0], y[1], y[2] * c + y[3] * s, y[3] * c - y[2] * s};
}

OdeOptions ode_options(const QubitParams& p, const BlochOptions& opts) {
    OdeOptions o;
    o.rtol = opts.rtol;
    o.atol = opts.atol;
    o.h_max = bloch_max_step(p);
    return o;
}

// Reduced Bloch vector v = (rho00, Re rho01, Im rho01) obeys dv/dt = M(t) v + b.
struct ReducedSystem {
    const QubitParams& p;
    double eps(double t) const { return p.eps0 + p.amp * std::sin(p.omega * t); }
    void apply(double e, const double* v, double* dv) const {
        dv[0] = -(p.gamma01 + p.gamma10) * v[0] + p.delta * v[2];
        dv[1] = -p.gamma2 * v[1] + e * v[2];
        dv[2] = -p.delta * v[0] - e * v[1] - p.gamma2 * v[2];
    }
};

// Fundamental matrix columns (9 values) plus the particular solution (3).
struct MonodromyRhs {
    ReducedSystem sys;
    void operator()(double t, const State<12>& y, State<12>& dy) const {
        const double e = sys.eps(t);
        for (int c = 0; c < 3; ++c) sys.apply(e, &y[3 * c], &dy[3 * c]);
        sys.apply(e, &y[9], &dy[9]);
        dy[9] += sys.p.gamma10;
        dy[11] += 0.5 * sys.p.delta;
    }
};

PeriodicOptions periodic_options(const QubitParams& p, const SteadyStateOptions& opts) {
    PeriodicOptions po;
    po.samples_per_period = opts.samples_per_period;
    po.drift_tol = opts.drift_tol;
    po.drift_periods = opts.drift_periods;
    const double t1 = p.t1();
    if (std::isfinite(t1)) {
        po.min_time = opts.min_t1_multiple * t1;
        po.cap_time = opts.cap_t1_multiple * t1;
    } else {
        po.min_time = 0.0;
        po.cap_time = static_cast<double>(opts.cap_periods_without_t1) * p.period();
    }
    po.cap_time = std::max(po.cap_time, (opts.drift_periods + 1) * p.period());
    return po;
}

PeriodicSteadyState to_steady(const PeriodicRun<4>& run) {
    PeriodicSteadyState out;
    out.waveform.times = run.times;
    out.waveform.states.reserve(run.states.size());
    for (const auto& s : run.states) out.waveform.states.push_back(unpack(s));
    out.avg_rho00 = run.avg;
    out.peak_to_peak = run.peak_to_peak;
    out.converged = run.converged;
    out.periods_elapsed = run.periods;
    return out;
}

}  // namespace

double bloch_max_step(const QubitParams& p) {
    const double fastest = std::max({std::abs(p.eps0) + p.amp, p.delta, p.gamma2});
    const double by_rate = fastest > 0.0 ? 0.1 / fastest : std::numeric_limits<double>::infinity();
    return std::min(p.period() / 200.0, by_rate);
}

Trajectory integrate(const QubitParams& p, const DensityState& init, double t_final,
                     std::span<const double> sample_grid, const BlochOptions& opts) {
    require_physical(p);
    if (!(t_final >= 0.0)) throw ValidationError("t_final", "must be non-negative");
    Trajectory traj;
    traj.times.reserve(sample_grid.size());
    traj.states.reserve(sample_grid.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (double ts : sample_grid) {
        if (ts < 0.0 || ts > t_final) throw ValidationError("sample_grid", "sample outside [0, t_final]");
        if (ts <= prev) throw ValidationError("sample_grid", "sample times must be strictly increasing");
        prev = ts;
    }

    double t = 0.0;
    Bloch4 y = pack(init);
    if (opts.frame == Frame::Lab) {
        DormandPrince<4> solver(ode_options(p, opts));
        LabRhs rhs{p};
        for (double ts : sample_grid) {
            solver.advance(rhs, t, y, ts);
            traj.times.push_back(ts);
            traj.states.push_back(unpack(y));
        }
    } else {
        DormandPrince<4> solver(ode_options(p, opts));
        GaugeRhs rhs{p};
        y = lab_to_gauge(p, 0.0, y);
        for (double ts : sample_grid) {
            solver.advance(rhs, t, y, ts);
            traj.times.push_back(ts);
            traj.states.push_back(unpack(gauge_to_lab(p, ts, y)));
        }
    }
    return traj;
}

PeriodicSteadyState steady_state(const QubitParams& p, const DensityState& init, const SteadyStateOptions& opts) {
    require_physical(p);
    const PeriodicOptions po = periodic_options(p, opts);
    const OdeOptions ode = ode_options(p, opts.bloch);
    auto rho00 = [](const Bloch4& y) { return y[0]; };
    if (opts.bloch.frame == Frame::Lab)
        return to_steady(run_to_periodic<4>(LabRhs{p}, pack(init), p.period(), rho00, po, ode));

    // The gauge phase is not periodic, so map back to the lab frame per sample.
    auto run = run_to_periodic<4>(GaugeRhs{p}, lab_to_gauge(p, 0.0, pack(init)), p.period(), rho00, po, ode);
    for (std::size_t i = 0; i < run.states.size(); ++i) run.states[i] = gauge_to_lab(p, run.times[i], run.states[i]);
    return to_steady(run);
}

PeriodicSteadyState steady_state_floquet(const QubitParams& p, const SteadyStateOptions& opts) {
    require_physical(p);
    OdeOptions ode = ode_options(p, opts.bloch);
    const double period = p.period();

    State<12> y{};
    y[0] = y[4] = y[8] = 1.0;
    {
        DormandPrince<12> solver(ode);
        double t = 0.0;
        MonodromyRhs rhs{ReducedSystem{p}};
        solver.advance(rhs, t, y, period);
    }
    Eigen::Matrix3d phi;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) phi(r, c) = y[3 * c + r];
    const Eigen::Vector3d shift(y[9], y[10], y[11]);
    const Eigen::Vector3d fixed = (Eigen::Matrix3d::Identity() - phi).colPivHouseholderQr().solve(shift);

    const DensityState start{fixed[0], 1.0 - fixed[0], fixed[1], fixed[2]};
    DormandPrince<4> solver(ode);
    LabRhs rhs{p};
    double t = 0.0;
    Bloch4 state = pack(start);
    PeriodicRun<4> run;
    integrate_period(solver, rhs, t, state, 0.0, period, opts.samples_per_period, run.times, run.states);
    std::vector<double> values(run.states.size());
    std::transform(run.states.begin(), run.states.end(), values.begin(), [](const Bloch4& s) { return s[0]; });
    run.avg = trapezoid_average(values);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    run.peak_to_peak = *hi - *lo;
    const Bloch4 end = run.states.back();
    const double closure = std::max({std::abs(end[0] - fixed[0]), std::abs(end[2] - fixed[1]), std::abs(end[3] - fixed[2])});
    run.converged = std::isfinite(closure) && closure < 1e-8;
    run.periods = 1;
    return to_steady(run);
}

}  // namespace lzs
