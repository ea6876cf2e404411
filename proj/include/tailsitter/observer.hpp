#pragma once

#include <array>
#include <vector>

#include "tailsitter/actuator.hpp"
#include "tailsitter/dynamics.hpp"
#include "tailsitter/mathcore.hpp"

namespace tailsitter {

using Vec6 = Eigen::Matrix<double, 6, 1>;

struct FtcObserverState {
    double zeta1_hat = 0.0;
    double zeta2_hat = 0.0;
    double k1 = 1.0;
    double k2 = 1.0;
};

enum class ObserverScheme {
    explicit_euler,
    implicit_euler,  // backward Euler with a set-valued sign, chattering-free
};

/// One explicit Euler step of
///   zeta1_hat' = zeta2_hat + Xi - k1 |e|^(1/2) sign(e),  zeta2_hat' = -k2 sign(e),  e = zeta1_hat - zeta1.
FtcObserverState observer_step(const FtcObserverState& obs, double measured_zeta1, double Xi, double dt);

/// Same dynamics discretized implicitly; the error is evaluated against the new measurement.
FtcObserverState observer_step_implicit(const FtcObserverState& obs, double measured_zeta1, double Xi, double dt);

struct ObserverGains {
    std::array<double, 6> k1{};
    std::array<double, 6> k2{};

    /// Gains listed in the parameter table.
    static ObserverGains baseline();
    /// baseline for the velocity channels, rate channels raised for the scenario torque disturbance.
    static ObserverGains scenario_default();
};

/// Consecutive small-error steps before a channel is flagged as converged.
inline constexpr int kConvergenceSteps = 50;
inline constexpr double kConvergenceTol = 1e-4;

/// Six channels: 0-2 inertial velocity, 3-5 body rates.
class ObserverBank {
public:
    explicit ObserverBank(const ObserverGains& gains, ObserverScheme scheme = ObserverScheme::explicit_euler);

    void reset(const Vec6& measured);
    void step(const Vec6& measured, const Vec6& Xi, double dt, double t);

    const FtcObserverState& channel(int i) const { return channels_[i]; }
    bool converged(int i) const { return converged_[i]; }
    double converged_at(int i) const { return converged_at_[i]; }
    bool stepped() const { return steps_ > 0; }
    Vec6 disturbance_hat() const;
    ObserverScheme scheme() const { return scheme_; }

private:
    std::array<FtcObserverState, 6> channels_;
    std::array<bool, 6> converged_{};
    std::array<int, 6> streak_{};
    std::array<double, 6> converged_at_{};
    ObserverScheme scheme_;
    long steps_ = 0;
};

/// Known part of the translational and rotational dynamics built from the nominal coax model.
/// In forward mode only the aileron roll moment of the wing is counted as known; the rest of the wing
/// moment is left to the observer.
Vec6 known_dynamics(const State& s, const ActuatorCommand& cmd, const AircraftParams& params);

/// Channel measurements (v, Omega) of a state.
Vec6 observer_measurement(const State& s);

struct DisturbanceEstimate {
    Vec3 force_body = Vec3::Zero();  // lumped force, body frame
    Vec3 torque_body = Vec3::Zero();
};

DisturbanceEstimate estimate_disturbances(const ObserverBank& bank, const State& s, const AircraftParams& params);

struct DescribingGains {
    double N1 = 0.0;
    double N2 = 0.0;
};

inline constexpr double kDelta1 = 1.1128;

DescribingGains describing_function_gains(double A0);

/// (2/pi) * integral over [0, pi] of |sin u|^(3/2).
double delta1_quadrature();

struct BodePoint {
    double omega = 0.0;
    double g1_mag_db = 0.0;
    double g1_phase_deg = 0.0;
    double g2_mag_db = 0.0;
    double g2_phase_deg = 0.0;
};

struct LinearizedObserver {
    double c1 = 0.0;  // 1.1128 k1 / sqrt(A0)
    double c2 = 0.0;  // 4 k2 / (pi A0)
};

LinearizedObserver linearize_observer(double A0, double k1, double k2);

std::vector<BodePoint> bode_response(double A0, double k1, double k2, const std::vector<double>& freq_grid);

/// Frequency where |G1| first drops 3 dB below its DC gain.
double g1_cutoff_frequency(double A0, double k1, double k2);

}  // namespace tailsitter
