#include "rislink/interference.hpp"

#include <cmath>
#include <stdexcept>

namespace rislink {

double InterferenceLevel::linear_ratio() const {
    if (is_off()) return 0.0;
    return std::pow(10.0, int_db / 10.0);
}

double jammer_power(InterferenceLevel level, double signal_power) {
    if (!(signal_power > 0.0))
        throw std::invalid_argument("jammer_power: signal_power must be positive");
    return signal_power * level.linear_ratio();
}

std::vector<InterferenceLevel> escalation_schedule(double start_db, double step_db,
                                                   double end_db) {
    if (!(step_db > 0.0))
        throw std::invalid_argument("escalation_schedule: step_db must be positive");
    if (start_db > end_db)
        throw std::invalid_argument("escalation_schedule: start_db must not exceed end_db");
    std::vector<InterferenceLevel> levels;
    // Tolerance against accumulated dB rounding when the grid lands on end_db.
    const double tol = 1e-9 * std::max(1.0, std::abs(end_db));
    for (int k = 0;; ++k) {
        const double db = start_db + step_db * k;
        if (db > end_db + tol) break;
        levels.push_back(InterferenceLevel::from_db(db));
    }
    if (levels.back().int_db < end_db - tol) levels.push_back(InterferenceLevel::from_db(end_db));
    return levels;
}

}  // namespace rislink
