#pragma once

#include <Eigen/Dense>

namespace attobs {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Attitude-plus-rate state: R is the attitude of the body frame in the
/// inertial frame, omega the body-frame angular velocity (rad/s).
struct State {
    Mat3 R = Mat3::Identity();
    Vec3 omega = Vec3::Zero();
};

/// Input pair of the second-order kinematics: an input angular velocity
/// acting on the attitude (rad/s, zero for the free system) and the angular
/// acceleration (rad/s^2).
struct InputVelocity {
    Vec3 ang_vel = Vec3::Zero();
    Vec3 ang_accel = Vec3::Zero();
};

/// Element of the symmetry group SO(3) x R^3 with the semi-direct product.
/// `rot` is a relative rotation applied on the right of a reference attitude,
/// `vel` an angular-velocity offset expressed in the reference frame.
struct SymElement {
    Mat3 rot = Mat3::Identity();
    Vec3 vel = Vec3::Zero();

    static SymElement Identity() { return {}; }

    /// Semi-direct product (A,a)*(B,b) = (AB, a + Ab).
    SymElement operator*(const SymElement& other) const {
        return {rot * other.rot, vel + rot * other.vel};
    }

    /// Group inverse (A,a)^-1 = (A^T, -A^T a).
    SymElement inverse() const { return {rot.transpose(), -(rot.transpose() * vel)}; }
};

/// Tangent of State at a given (R, omega): dR lives in the ambient 3x3 space
/// with R^T dR skew-symmetric, domega in R^3.
struct StateDerivative {
    Mat3 dR = Mat3::Zero();
    Vec3 domega = Vec3::Zero();
};

/// Tangent of SymElement: drot with drot * rot^T skew-symmetric, dvel in R^3.
struct SymDerivative {
    Mat3 drot = Mat3::Zero();
    Vec3 dvel = Vec3::Zero();
};

/// True when R^T R = I and det R = 1 within `tol` (Frobenius norm / absolute).
bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Nearest rotation matrix in the Frobenius sense (polar projection).
/// Used at construction boundaries (config parsing, file input) only; group
/// operations never re-project.
Mat3 project_to_rotation(const Mat3& M);

/// Finite-entry check for vectors and matrices.
inline bool all_finite(const Vec3& v) { return v.allFinite(); }
inline bool all_finite(const Mat3& m) { return m.allFinite(); }

}  // namespace attobs
