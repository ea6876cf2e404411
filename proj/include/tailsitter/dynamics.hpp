#pragma once

#include <numbers>

#include <array>
#include <functional>

#include "tailsitter/actuator.hpp"
#include "tailsitter/airframe_aero.hpp"
#include "tailsitter/mathcore.hpp"
#include "tailsitter/rotor_aero.hpp"
#include "tailsitter/wrench.hpp"

namespace tailsitter {

struct InertiaParams {
    double m = 50.0;
    double g = 10.0;
    Vec3 J = Vec3(0.2, 0.2, 0.4);  // diagonal
};

struct AircraftParams {
    InertiaParams inertia;
    double rho = 1.225;
    CoaxGeometry coax;
    QuadRotorParams quad;
    WingParams wing;
    FuselageParams fuselage;

    /// Coax geometry with the airframe air density applied.
    CoaxGeometry coax_geometry() const;
};

struct State {
    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Quat q;
    BodyRates omega = BodyRates::Zero();
};

/// Body-frame force and torque disturbances as functions of time.
struct Disturbance {
    std::function<Vec3(double)> force;
    std::function<Vec3(double)> torque;

    static Disturbance none();
    Vec3 force_at(double t) const { return force ? force(t) : Vec3::Zero(); }
    Vec3 torque_at(double t) const { return torque ? torque(t) : Vec3::Zero(); }
};

/// Everything the plant applies at one instant.
struct PlantLoads {
    Vec3 force_inertial = Vec3::Zero();  // excludes gravity
    Vec3 torque_body = Vec3::Zero();
    Wrench body = Wrench::zero(Frame::body);
    double coax_thrust = 0.0;
    double quad_thrust = 0.0;
    double alpha = 0.0;
    bool coax_envelope_clamped = false;
};

struct StateDerivative {
    Vec3 p_dot = Vec3::Zero();
    Vec3 v_dot = Vec3::Zero();
    QuatRate q_rate;
    Vec3 omega_dot = Vec3::Zero();
};

/// Attitude frame convention: inertial z is up and the body frame has z toward the belly, so the stored
/// quaternion is a fixed half-turn about x composed with the ZYX Euler quaternion. With this convention the
/// Euler pitch equals the nose elevation above the horizon.
Quat flight_attitude(const EulerAngles& angles);
EulerAngles flight_euler(const Quat& q);
double nose_elevation(const Quat& q);
/// Nose angle in the x-z plane, measured from +x toward +z; unlike nose_elevation it continues past 90 deg.
double pitch_angle(const Quat& q);

/// Largest inflow angle the plant evaluates the coax at; beyond it the axial flow reverses.
inline constexpr double kPlantInflowAlphaMax = std::numbers::pi / 2.0;

/// Rotor inflow seen by the coax: axial speed along body x and edgewise speed.
struct RotorInflow {
    double alpha = 0.0;  // atan2(edgewise, axial), in [0, pi]
    double V_b = 0.0;
};
RotorInflow rotor_inflow(const Vec3& v_body);

PlantLoads total_wrench(const State& s, const ActuatorCommand& cmd, const Disturbance& dist, double t,
                        const AircraftParams& params);

StateDerivative state_derivative(const State& s, const PlantLoads& loads, const InertiaParams& inertia);

/// One RK4 step with the command held; the quaternion is renormalized afterward.
State step(const State& s, const ActuatorCommand& cmd, const Disturbance& dist, double t, double dt,
           const AircraftParams& params);

}  // namespace tailsitter
