#pragma once

#include "tailsitter/errors.hpp"
#include "tailsitter/mathcore.hpp"

namespace tailsitter {

enum class Frame { body, inertial };

struct Wrench {
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
    Frame frame = Frame::body;

    static Wrench zero(Frame f) { return {Vec3::Zero(), Vec3::Zero(), f}; }

    Wrench& operator+=(const Wrench& other) {
        if (other.frame != frame) throw FrameMismatch("cannot add wrenches in different frames");
        force += other.force;
        torque += other.torque;
        return *this;
    }
};

inline Wrench operator+(Wrench a, const Wrench& b) { return a += b; }

}  // namespace tailsitter
