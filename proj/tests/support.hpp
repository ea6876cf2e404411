#pragma once

#include <numbers>
#include <random>

#include "tailsitter/mathcore.hpp"

namespace testgen {

inline constexpr double kPi = std::numbers::pi;

/// Seeded generator shared by the property tests; every suite builds its own instance.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    tailsitter::Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    tailsitter::EulerAngles angles(double pitch_margin = 1e-2) {
        return {uniform(-kPi, kPi), uniform(-kPi / 2 + pitch_margin, kPi / 2 - pitch_margin), uniform(-kPi, kPi)};
    }

    tailsitter::Quat unit_quat() {
        std::normal_distribution<double> n;
        tailsitter::Quat q{n(rng_), tailsitter::Vec3(n(rng_), n(rng_), n(rng_))};
        return q.normalized();
    }

private:
    std::mt19937_64 rng_;
};

inline double max_abs(const tailsitter::Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testgen
