#pragma once

#include "attobs/sensors.hpp"
#include "attobs/types.hpp"

namespace attobs {

/// Gains, reference state and known inertial directions of the observer.
struct ObserverConfig {
    double k1 = 3.0;                 ///< direction-mismatch gain on the rotation update (1/s)
    double k2 = 1.0;                 ///< direction-mismatch gain on the acceleration input
    State reference;                 ///< fixed anchor state of the group parametrisation
    Vec3 accel_ref = Vec3::UnitZ();  ///< inertial direction of the normalised common reading
    Vec3 mag_ref = Vec3(1, 0, 1).normalized();  ///< inertial magnetic field direction

    /// Throws std::invalid_argument on non-positive gains, non-unit reference
    /// directions, or directions that are not linearly independent.
    void validate() const;
};

/// Correction terms built from measured vs predicted output directions.
struct Innovation {
    Vec3 ang_vel;    ///< velocity correction fed to the rotation update (rad/s)
    Vec3 ang_accel;  ///< correction added to the measured angular acceleration (rad/s^2)
    Vec3 mismatch;   ///< m x m_pred + a x a_pred
};

/// Error metrics of an estimate against ground truth. `lyapunov` combines the
/// two direction alignment defects with the squared velocity error.
struct Diagnostics {
    double lyapunov = 0.0;
    double att_err_rad = 0.0;
    double omega_err = 0.0;
    double innovation_norm = 0.0;
};

/// Innovation from one output pair: ang_vel = k1 * mismatch and
/// ang_accel = k2 * mismatch, with predictions rot^T R_ref^T (mag_ref, accel_ref).
Innovation innovation(const OutputPair& y, const SymElement& xhat,
                      const ObserverConfig& cfg);

/// One geometric Euler step of the observer kinematics on the group, using
/// the innovation of `y` and the measured angular acceleration.
/// Throws std::invalid_argument for dt <= 0.
SymElement observer_step(const SymElement& xhat, const OutputPair& y,
                         const Vec3& ang_accel_meas, const ObserverConfig& cfg, double dt);

/// State estimate: the group element applied to the reference state.
State estimate(const SymElement& xhat, const ObserverConfig& cfg);

/// Diagnostics from noise-free ground truth: Lyapunov value, attitude error
/// angle, angular velocity error norm, and the norm of the noise-free
/// direction mismatch.
Diagnostics diagnostics(const State& truth, const SymElement& xhat,
                        const ObserverConfig& cfg);

/// Frobenius norm of Rerr^T M - M Rerr with Rerr = R_est R_true^T and
/// M = mag_ref mag_ref^T + accel_ref accel_ref^T. Tends to zero as the
/// estimate converges; small values also flag the stalled equilibria.
double commutation_residual(const State& truth, const SymElement& xhat,
                            const ObserverConfig& cfg);

}  // namespace attobs
