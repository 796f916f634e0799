#pragma once

#include <random>

#include "attobs/types.hpp"

namespace attobs {

/// Skew-symmetric matrix of v: skew(v) * w = v x w for all w.
Mat3 skew(const Vec3& v);

/// Inverse of skew. Throws std::invalid_argument if the symmetric part of S
/// exceeds `tol` in Frobenius norm (a non-skew argument is a caller bug).
Vec3 vee(const Mat3& S, double tol = 1e-9);

/// Exponential map so(3) -> SO(3), Rodrigues form with a series fallback for
/// rotation angles below 1e-8 rad.
Mat3 so3_exp(const Vec3& w);

/// Rotation angle of R in [0, pi].
double rotation_angle(const Mat3& R);

/// Right action of the symmetry group on states:
/// ((Q,q), (R,omega)) -> (RQ, Q^T (omega + q)).
State state_action(const SymElement& X, const State& x);

/// Right action of the symmetry group on input pairs:
/// ((Q,q), (w,a)) -> (Q^T (w - q), Q^T a).
InputVelocity velocity_action(const SymElement& X, const InputVelocity& v);

/// Right action on direction outputs: ((Q,q), y) -> Q^T y. The offset part
/// is ignored by definition.
Vec3 output_action(const SymElement& X, const Vec3& y);

/// Uniformly distributed rotation, via QR of a Gaussian matrix with sign
/// correction. Deterministic per engine state.
Mat3 random_rotation(std::mt19937_64& rng);

/// Vector with independent standard normal components.
Vec3 random_vec3(std::mt19937_64& rng);

}  // namespace attobs
