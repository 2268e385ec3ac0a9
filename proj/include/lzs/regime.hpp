#pragma once

// Which approximation to trust at a parameter point, from the ordering of
// drive frequency, tunnel splitting, mean transition rate and decoherence.

#include <map>
#include <string>

#include "lzs/params.hpp"

namespace lzs {

enum class Regime { PRWA, APA, NCA, UNSUPPORTED_HIGH_COHERENCE, BOUNDARY };

std::string to_string(Regime r);

struct RegimeReport {
    Regime label = Regime::BOUNDARY;
    double avg_rate = 0.0;  ///< <W01> at the point's own eps0
    /// Ratio for each inequality that was tested, keyed "omega/delta",
    /// "omega/avg_rate", "gamma2/avg_rate". A ratio in [1/2, 2] is a tie.
    std::map<std::string, double> margins;
    /// High coherence near eps0 ~ A, where the averaged rate is unreliable.
    bool near_amplitude_warning = false;
};

inline constexpr double kRegimeBand = 2.0;

RegimeReport classify(const QubitParams& p);

}  // namespace lzs
