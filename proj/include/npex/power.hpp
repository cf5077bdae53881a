#pragma once

// Microengine power model: dynamic power scales with V^2 * f times an
// activity factor, plus a voltage-proportional static term.

#include "npex/dvs.hpp"

namespace npex::sim {

struct PowerCoefficients {
    // Calibrated so one busy ME at 600 MHz / 1.3 V draws 0.25 W and the
    // six-ME chip about 1.5 W.
    double k_dyn = 0.25 / (1.3 * 1.3 * 600.0); // W per V^2*MHz
    double alpha_idle = 0.1;                   // activity factor while idle or stalled
    double k_static = 0.0;                     // W per V
    double adder_energy_uj = 0.0005;           // TDVS monitor adder, per packet arrival
};

inline double dynamic_power_w(const PowerCoefficients& c, const dvs::VfOperatingPoint& point, bool busy) {
    const double activity = busy ? 1.0 : c.alpha_idle;
    return c.k_dyn * point.voltage * point.voltage * point.frequency_mhz * activity + c.k_static * point.voltage;
}

} // namespace npex::sim
