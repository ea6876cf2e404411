#pragma once

#include <array>

namespace tailsitter {

enum class FlightMode { transition, forward };

/// Rotor speeds and surface deflections held over one control period.
struct ActuatorCommand {
    double omega_u = 0.0;
    double omega_l = 0.0;
    std::array<double, 4> omega{0.0, 0.0, 0.0, 0.0};
    double delta_a = 0.0;   // vane deflection
    double delta_12 = 0.0;  // aileron magnitude; wing 1 gets -delta_12, wing 2 gets +delta_12
    FlightMode mode = FlightMode::transition;
    bool saturated = false;
};

}  // namespace tailsitter
