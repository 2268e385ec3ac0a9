#include "lzs/params.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

double unit_scale(FreqUnit unit) {
    // 2pi * (1e-3 GHz per MHz | 1) -> rad/ns
    return unit == FreqUnit::MHz ? kTwoPi * 1e-3 : kTwoPi;
}

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

}  // namespace

double to_angular(Frequency f) { return f.value * unit_scale(f.unit); }

Frequency from_angular(double w, FreqUnit unit) { return {w / unit_scale(unit), unit}; }

double temperature_to_angular(double millikelvin) {
    return kTwoPi * kBoltzmannOverPlanckGHzPerK * 1e-3 * millikelvin;
}

double temperature_to_millikelvin(double angular) {
    return angular / (kTwoPi * kBoltzmannOverPlanckGHzPerK * 1e-3);
}

std::string to_string(FreqUnit unit) { return unit == FreqUnit::MHz ? "MHz" : "GHz"; }

Frequency parse_frequency(std::string_view text, const std::string& field) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{}) throw ValidationError(field, "expected '<number> MHz|GHz', got '" + std::string(text) + "'");
    std::string_view rest = trim(std::string_view(ptr, text.data() + text.size() - ptr));
    Frequency f{value, FreqUnit::MHz};
    if (rest == "MHz" || rest == "mhz") {
        f.unit = FreqUnit::MHz;
    } else if (rest == "GHz" || rest == "ghz") {
        f.unit = FreqUnit::GHz;
    } else {
        throw ValidationError(field, "missing or unknown frequency unit in '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) throw ValidationError(field, "non-finite value");
    return f;
}

double QubitParams::t1() const {
    const double rate = std::max(gamma01, gamma10);
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

InterwellRates detailed_balance(double eps0, double temperature, double t1_ns) {
    const double fast = 1.0 / t1_ns;
    const double slow = fast * std::exp(-std::abs(eps0) / temperature);
    // eps0 > 0: |1> is the lower level, so the downhill rate 0 -> 1 is the fast one.
    if (eps0 >= 0.0) return {fast, slow};
    return {slow, fast};
}

QubitParams build_params(const RawInputs& raw) {
    const Frequency* freqs[] = {&raw.delta, &raw.eps0, &raw.amp, &raw.omega, &raw.gamma2};
    const char* names[] = {"delta", "eps0", "amp", "omega", "gamma2"};
    for (int i = 0; i < 5; ++i) require(std::isfinite(freqs[i]->value), names[i], "must be finite");
    require(std::isfinite(raw.t1_ns), "t1", "must be finite");
    require(std::isfinite(raw.temperature_mk), "temperature", "must be finite");
    require(raw.t1_ns > 0.0, "t1", "must be positive");
    require(raw.temperature_mk > 0.0, "temperature", "must be positive");

    QubitParams p;
    p.delta = to_angular(raw.delta);
    p.eps0 = to_angular(raw.eps0);
    p.amp = to_angular(raw.amp);
    p.omega = to_angular(raw.omega);
    p.gamma2 = to_angular(raw.gamma2);
    p.temperature = temperature_to_angular(raw.temperature_mk);
    const auto rates = detailed_balance(p.eps0, p.temperature, raw.t1_ns);
    p.gamma01 = rates.gamma01;
    p.gamma10 = rates.gamma10;
    validate(p);
    return p;
}

RawInputs to_raw(const QubitParams& p, FreqUnit unit) {
    RawInputs raw;
    raw.delta = from_angular(p.delta, unit);
    raw.eps0 = from_angular(p.eps0, unit);
    raw.amp = from_angular(p.amp, unit);
    raw.omega = from_angular(p.omega, unit);
    raw.gamma2 = from_angular(p.gamma2, unit);
    raw.t1_ns = p.t1();
    raw.temperature_mk = temperature_to_millikelvin(p.temperature);
    return raw;
}

void validate(const QubitParams& p) {
    require(std::isfinite(p.delta) && p.delta > 0.0, "delta", "must be positive");
    require(std::isfinite(p.eps0), "eps0", "must be finite");
    require(std::isfinite(p.amp) && p.amp >= 0.0, "amp", "must be non-negative");
    require(std::isfinite(p.omega) && p.omega > 0.0, "omega", "must be positive");
    require(std::isfinite(p.gamma2) && p.gamma2 >= 0.0, "gamma2", "must be non-negative");
    require(std::isfinite(p.gamma01) && p.gamma01 >= 0.0, "gamma01", "must be non-negative");
    require(std::isfinite(p.gamma10) && p.gamma10 >= 0.0, "gamma10", "must be non-negative");
    require(std::isfinite(p.temperature) && p.temperature > 0.0, "temperature", "must be positive");
    const double expected = p.gamma01 * std::exp(-p.eps0 / p.temperature);
    const double scale = std::max(p.gamma10, expected);
    require(scale == 0.0 || std::abs(p.gamma10 - expected) <= 1e-12 * scale, "gamma10",
            "violates detailed balance gamma10 = gamma01 exp(-eps0/T)");
}

void require_physical(const QubitParams& p) {
    require(std::isfinite(p.delta) && p.delta >= 0.0, "delta", "must be finite and non-negative");
    require(std::isfinite(p.eps0), "eps0", "must be finite");
    require(std::isfinite(p.amp) && p.amp >= 0.0, "amp", "must be finite and non-negative");
    require(std::isfinite(p.omega) && p.omega > 0.0, "omega", "must be positive");
    require(std::isfinite(p.gamma2) && p.gamma2 >= 0.0, "gamma2", "must be finite and non-negative");
    require(std::isfinite(p.gamma01) && p.gamma01 >= 0.0, "gamma01", "must be finite and non-negative");
    require(std::isfinite(p.gamma10) && p.gamma10 >= 0.0, "gamma10", "must be finite and non-negative");
}

double thermal_population(double eps0, double temperature) {
    // Written with |x| so neither branch overflows.
    const double x = eps0 / temperature;
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double thermal_population(const QubitParams& p) {
    const double sum = p.gamma01 + p.gamma10;
    if (sum > 0.0) return p.gamma10 / sum;
    return thermal_population(p.eps0, p.temperature);
}

void validate(const ThreeLevelParams& p) {
    require(std::isfinite(p.delta01) && p.delta01 >= 0.0, "delta01", "must be non-negative");
    require(std::isfinite(p.delta20) && p.delta20 >= 0.0, "delta20", "must be non-negative");
    require(std::isfinite(p.m0) && p.m0 > 0.0, "m0", "must be positive");
    require(std::isfinite(p.m1) && p.m1 > 0.0, "m1", "must be positive");
    require(std::isfinite(p.m2) && p.m2 > 0.0, "m2", "must be positive");
    require(std::isfinite(p.phi20), "phi20", "must be finite");
    require(std::isfinite(p.phi_dc), "phi_dc", "must be finite");
    require(std::isfinite(p.phi_rf) && p.phi_rf >= 0.0, "phi_rf", "must be non-negative");
    require(std::isfinite(p.omega) && p.omega > 0.0, "omega", "must be positive");
    require(std::isfinite(p.gamma2) && p.gamma2 >= 0.0, "gamma2", "must be non-negative");
    require(std::isfinite(p.gamma21) && p.gamma21 >= 0.0, "gamma21", "must be non-negative");
    require(p.delta20 == 0.0 || p.gamma21 > 0.0, "gamma21", "must be positive when delta20 > 0");
    require(std::isfinite(p.t1) && p.t1 > 0.0, "t1", "must be positive");
    require(std::isfinite(p.temperature) && p.temperature > 0.0, "temperature", "must be positive");
}

}  // namespace lzs
