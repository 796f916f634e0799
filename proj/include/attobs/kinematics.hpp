#pragma once

#include "attobs/geometry.hpp"
#include "attobs/types.hpp"

namespace attobs {

/// Second-order attitude kinematics:
/// dR = R * skew(omega + ang_vel), domega = ang_accel.
StateDerivative system_dynamics(const State& x, const InputVelocity& v);

/// Kinematics lifted onto the symmetry group, anchored at `reference`:
/// drot = skew(omega_ref + vel + rot*ang_vel) * rot,
/// dvel = skew(rot*ang_vel) * (omega_ref + vel) + rot*ang_accel.
SymDerivative lifted_dynamics(const SymElement& X, const InputVelocity& v,
                              const State& reference);

/// Projects a group element back to the state space through the state action
/// at `reference`. Identical to state_action(X, reference).
State project_state(const SymElement& X, const State& reference);

/// One geometric Euler step of the state kinematics:
/// R <- R * so3_exp((omega + ang_vel) * dt), omega <- omega + ang_accel * dt.
/// Throws std::invalid_argument for dt <= 0.
State integrate_state(const State& x, const InputVelocity& v, double dt);

/// One geometric Euler step of the lifted kinematics: exponential update for
/// the rotation part, Euler update for the offset part with the input
/// transported through the updated rotation (keeps the projected velocity
/// update free of rotation-coupling defects; see the implementation note).
/// Throws std::invalid_argument for dt <= 0.
SymElement integrate_sym(const SymElement& X, const InputVelocity& v,
                         const State& reference, double dt);

}  // namespace attobs
