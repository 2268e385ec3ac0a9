#pragma once

// Microwave-driven Landau-Zener (MDLZ) transition rates.
//
// All rates are in 1/ns. The multiphoton forms are sums of Lorentzians
// weighted by J_n(A/w)^2; the time-dependent forms keep the drive harmonics
// that the rotating-wave treatment discards.

#include <optional>
#include <vector>

#include "lzs/params.hpp"
#include "lzs/specfun.hpp"

namespace lzs {

struct RatePair {
    double w01 = 0.0;  ///< |0> -> |1>
    double w10 = 0.0;  ///< |1> -> |0>
    std::optional<double> t;
};

/// (c^2/2) sum_n width J_n(A/w)^2 / ((eps - n w)^2 + width^2).
/// Throws SingularRateError when width == 0 and eps sits on a resonance n w.
double lorentzian_sum_rate(double coupling, double width, double eps, double amp, double omega);

/// (c^2/2) width / (eps^2 + width^2). Throws SingularRateError when width == 0.
double lorentzian_rate(double coupling, double width, double eps);

/// Stationary multiphoton rate, identical in both directions and even in eps.
double rate_prwa(const QubitParams& p, double eps);

struct HarmonicOptions {
    int order_cap = -1;          ///< |m| cutoff; -1 means truncation_order(A/w)
    int harmonic_cap = 4096;     ///< hard limit on the drive-harmonic index n
    double drop_tol = 1e-14;     ///< stop once harmonics fall below this times the largest
    int drop_window = 8;         ///< ... for this many consecutive n
};

/// Fourier representation of the time-dependent rates
///   W01(t) = (delta^2/2) sum_{n,m} J_{n+m} J_m gamma2 cos n(wt + pi/2) / ((eps0 - m w)^2 + gamma2^2)
///   W10(t) = same with an extra (-1)^n.
/// Coefficients are summed over m once; evaluation is a cosine series.
class RateSeries {
public:
    explicit RateSeries(const QubitParams& p, const HarmonicOptions& opts = {});

    RatePair at(double t) const;
    /// n = 0 term, the period average of both rates.
    double mean() const { return mean_; }
    int harmonics() const { return static_cast<int>(paired_.size()); }
    int order_cutoff() const { return order_cap_; }
    double omega() const { return omega_; }

private:
    double mean_ = 0.0;
    double omega_ = 0.0;
    int order_cap_ = 0;
    std::vector<double> paired_;  ///< C_n + C_-n for n = 1..H
};

RatePair rate_timedep(const QubitParams& p, double t, const HarmonicOptions& opts = {});

struct NonresonantTerm {
    double value = 0.0;
    int harmonic_cutoff = 0;
};

/// W01(t) minus its period average.
NonresonantTerm nonresonant_f(const QubitParams& p, double t, const HarmonicOptions& opts = {});

/// Single summand M(n, m, t) of the nonresonant part (n != 0), with the
/// Bessel row supplied by the caller.
double harmonic_term(const QubitParams& p, const BesselRow& row, int n, int m, double t);

/// Instantaneous (incoherent) rate at detuning eps0 + A sin(wt); symmetric.
double rate_nca(const QubitParams& p, double t);

/// Three-level drive already mapped from flux to energy:
///   eps01(t) = eps01_dc + amp01 sin(wt),  eps02(t) = eps02_dc + amp02 sin(wt).
struct ThreeLevelDrive {
    double delta01 = 0.0;
    double delta20 = 0.0;
    double eps01_dc = 0.0;
    double eps02_dc = 0.0;
    double amp01 = 0.0;
    double amp02 = 0.0;
    double omega = 0.0;
    double gamma2 = 0.0;
    double gamma21 = 0.0;
};

enum class CoolingMethod { APA, NCA };

struct ThreeLevelRates {
    double w01 = 0.0;  ///< = w10
    double w02 = 0.0;  ///< = w20
};

/// APA: period-averaged multiphoton sums (t ignored). NCA: instantaneous
/// Lorentzians. The 0-2 channel is broadened to gamma2 + gamma21/2.
ThreeLevelRates rates_threelevel(const ThreeLevelDrive& d, CoolingMethod method, double t);

}  // namespace lzs
