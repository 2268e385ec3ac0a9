#include "lzs/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

// Resonant up to the rounding of eps and n * omega.
bool on_resonance(double eps, double omega) {
    return std::abs(std::remainder(eps, omega)) <= 1e-12 * std::max(std::abs(eps), omega);
}

}  // namespace

double lorentzian_sum_rate(double coupling, double width, double eps, double amp, double omega) {
    if (coupling == 0.0) return 0.0;
    if (width == 0.0) {
        if (on_resonance(eps, omega))
            throw SingularRateError("zero-width Lorentzian exactly on a multiphoton resonance");
        return 0.0;
    }
    const double x = amp / omega;
    if (x > kMaxBesselArgument)
        throw DomainError("multiphoton sum: A/omega = " + std::to_string(x) + " exceeds " +
                          std::to_string(kMaxBesselArgument));
    const int n_max = truncation_order(x);
    const BesselRow row = bessel_row(x, n_max);
    const double w2 = width * width;
    // Pair +n and -n so rate(eps) == rate(-eps) holds bit for bit.
    double sum = row[0] * row[0] / (eps * eps + w2);
    for (int n = n_max; n >= 1; --n) {
        const double j2 = row[n] * row[n];
        const double dp = eps - n * omega, dm = eps + n * omega;
        sum += j2 * (1.0 / (dp * dp + w2) + 1.0 / (dm * dm + w2));
    }
    return 0.5 * coupling * coupling * width * sum;
}

double lorentzian_rate(double coupling, double width, double eps) {
    if (width == 0.0) throw SingularRateError("zero-width Lorentzian");
    return 0.5 * coupling * coupling * width / (eps * eps + width * width);
}

double rate_prwa(const QubitParams& p, double eps) {
    require_physical(p);
    return lorentzian_sum_rate(p.delta, p.gamma2, eps, p.amp, p.omega);
}

RateSeries::RateSeries(const QubitParams& p, const HarmonicOptions& opts) : omega_(p.omega) {
    require_physical(p);
    if (p.gamma2 == 0.0) {
        // Only the resonant Lorentzian would survive and it is a delta.
        throw SingularRateError("time-dependent rates need gamma2 > 0");
    }
    const double x = p.amp / p.omega;
    order_cap_ = opts.order_cap >= 0 ? opts.order_cap : truncation_order(x);
    const int m_cap = order_cap_;
    const int h_cap = std::max(0, opts.harmonic_cap);
    const BesselRow row = bessel_row(x, m_cap + h_cap);

    std::vector<double> lorentz(2 * static_cast<std::size_t>(m_cap) + 1);
    for (int m = -m_cap; m <= m_cap; ++m) {
        const double d = p.eps0 - m * p.omega;
        lorentz[m + m_cap] = p.gamma2 / (d * d + p.gamma2 * p.gamma2);
    }
    const double prefactor = 0.5 * p.delta * p.delta;
    // Also accumulates the magnitude of the summands, which sets the rounding floor.
    double magnitude = 0.0;
    auto coefficient = [&](int n) {
        double s = 0.0;
        for (int m = -m_cap; m <= m_cap; ++m) {
            const double term = row[n + m] * row[m] * lorentz[m + m_cap];
            s += term;
            magnitude += std::abs(term);
        }
        return prefactor * s;
    };

    // With the default m range the n = 0 slice is the stationary rate itself.
    mean_ = opts.order_cap < 0 ? lorentzian_sum_rate(p.delta, p.gamma2, p.eps0, p.amp, p.omega) : coefficient(0);
    double largest = std::abs(mean_);
    int quiet = 0;
    for (int n = 1; n <= h_cap; ++n) {
        magnitude = 0.0;
        const double c = coefficient(n) + coefficient(-n);
        paired_.push_back(c);
        largest = std::max(largest, std::abs(c));
        const double noise = 1e-13 * prefactor * magnitude;
        quiet = std::abs(c) <= std::max(opts.drop_tol * largest, noise) ? quiet + 1 : 0;
        if (quiet >= opts.drop_window) {
            paired_.resize(paired_.size() - static_cast<std::size_t>(quiet));
            break;
        }
    }
}

RatePair RateSeries::at(double t) const {
    const double phase = omega_ * t + 0.5 * std::numbers::pi;
    const double c1 = std::cos(phase);
    // cos(n phase) by the Chebyshev recurrence
    double prev = 1.0, cur = c1;
    double w01 = mean_, w10 = mean_;
    for (std::size_t k = 0; k < paired_.size(); ++k) {
        const double term = paired_[k] * cur;
        w01 += term;
        w10 += (k % 2 == 0) ? -term : term;  // n = k + 1
        const double next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
    }
    return {w01, w10, t};
}

RatePair rate_timedep(const QubitParams& p, double t, const HarmonicOptions& opts) {
    return RateSeries(p, opts).at(t);
}

NonresonantTerm nonresonant_f(const QubitParams& p, double t, const HarmonicOptions& opts) {
    const RateSeries series(p, opts);
    return {series.at(t).w01 - rate_prwa(p, p.eps0), series.harmonics()};
}

double harmonic_term(const QubitParams& p, const BesselRow& row, int n, int m, double t) {
    const double d = p.eps0 - m * p.omega;
    return row[n + m] * row[m] * p.gamma2 * std::cos(n * (p.omega * t + 0.5 * std::numbers::pi)) /
           (d * d + p.gamma2 * p.gamma2);
}

double rate_nca(const QubitParams& p, double t) {
    require_physical(p);
    return lorentzian_rate(p.delta, p.gamma2, p.eps0 + p.amp * std::sin(p.omega * t));
}

ThreeLevelRates rates_threelevel(const ThreeLevelDrive& d, CoolingMethod method, double t) {
    const double width02 = d.gamma2 + 0.5 * d.gamma21;
    ThreeLevelRates r;
    if (method == CoolingMethod::APA) {
        r.w01 = lorentzian_sum_rate(d.delta01, d.gamma2, d.eps01_dc, d.amp01, d.omega);
        r.w02 = lorentzian_sum_rate(d.delta20, width02, d.eps02_dc, d.amp02, d.omega);
    } else {
        const double s = std::sin(d.omega * t);
        r.w01 = d.delta01 == 0.0 ? 0.0 : lorentzian_rate(d.delta01, d.gamma2, d.eps01_dc + d.amp01 * s);
        r.w02 = d.delta20 == 0.0 ? 0.0 : lorentzian_rate(d.delta20, width02, d.eps02_dc + d.amp02 * s);
    }
    return r;
}

}  // namespace lzs
