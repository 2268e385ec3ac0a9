#include "lzs/regime.hpp"

#include <cmath>
#include <limits>

#include "lzs/rates.hpp"

namespace lzs {

namespace {

enum class Order { Greater, Less, Tie };

// x > y, x < y, or within the band.
Order compare_ratio(double ratio) {
    if (ratio > kRegimeBand) return Order::Greater;
    if (ratio < 1.0 / kRegimeBand) return Order::Less;
    return Order::Tie;
}

double ratio(double x, double y) {
    if (y == 0.0) return x == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return x / y;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::PRWA: return "PRWA";
        case Regime::APA: return "APA";
        case Regime::NCA: return "NCA";
        case Regime::UNSUPPORTED_HIGH_COHERENCE: return "UNSUPPORTED_HIGH_COHERENCE";
        case Regime::BOUNDARY: return "BOUNDARY";
    }
    return "BOUNDARY";
}

RegimeReport classify(const QubitParams& p) {
    require_physical(p);
    RegimeReport out;
    out.avg_rate = p.gamma2 > 0.0 ? rate_prwa(p, p.eps0) : 0.0;
    const double w = out.avg_rate;
    out.near_amplitude_warning = p.gamma2 < 3.0 * w && std::abs(p.eps0 - p.amp) < 3.0 * p.gamma2;

    const double r_delta = ratio(p.omega, p.delta);
    out.margins["omega/delta"] = r_delta;
    switch (compare_ratio(r_delta)) {
        case Order::Greater: out.label = Regime::PRWA; return out;
        case Order::Tie: out.label = Regime::BOUNDARY; return out;
        case Order::Less: break;
    }

    const double r_rate = ratio(p.omega, w);
    out.margins["omega/avg_rate"] = r_rate;
    switch (compare_ratio(r_rate)) {
        case Order::Greater: out.label = Regime::APA; return out;
        case Order::Tie: out.label = Regime::BOUNDARY; return out;
        case Order::Less: break;
    }

    const double r_coh = ratio(p.gamma2, w);
    out.margins["gamma2/avg_rate"] = r_coh;
    switch (compare_ratio(r_coh)) {
        case Order::Greater: out.label = Regime::NCA; break;
        case Order::Tie: out.label = Regime::BOUNDARY; break;
        case Order::Less: out.label = Regime::UNSUPPORTED_HIGH_COHERENCE; break;
    }
    return out;
}

}  // namespace lzs
