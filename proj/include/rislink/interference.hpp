#pragma once

#include <limits>
#include <vector>

namespace rislink {

/// Ratio of the interferer's transmit power to the legitimate transmit
/// power, in dB. Negative infinity encodes "jammer off".
struct InterferenceLevel {
    double int_db = -std::numeric_limits<double>::infinity();

    static InterferenceLevel off() { return {}; }
    static InterferenceLevel from_db(double db) { return {db}; }

    bool is_off() const { return int_db == -std::numeric_limits<double>::infinity(); }
    /// 10^(int_db/10); 0 when off.
    double linear_ratio() const;

    bool operator==(const InterferenceLevel&) const = default;
};

/// Interferer transmit power for a given signal power. Throws on
/// nonpositive signal power.
double jammer_power(InterferenceLevel level, double signal_power);

/// Arithmetic dB sequence from start_db to end_db inclusive of both
/// endpoints. Throws when step_db <= 0 or start_db > end_db.
std::vector<InterferenceLevel> escalation_schedule(double start_db, double step_db,
                                                   double end_db);

}  // namespace rislink
