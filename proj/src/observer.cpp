#include "attobs/observer.hpp"

#include <cmath>
#include <stdexcept>

#include "attobs/geometry.hpp"
#include "attobs/kinematics.hpp"

namespace attobs {

void ObserverConfig::validate() const {
    if (!(k1 > 0.0) || !(k2 > 0.0))
        throw std::invalid_argument("observer: gains must be positive");
    if (std::abs(accel_ref.norm() - 1.0) > 1e-12 || std::abs(mag_ref.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("observer: reference directions must be unit-norm");
    if (accel_ref.cross(mag_ref).norm() < 1e-6)
        throw std::invalid_argument("observer: reference directions must be independent");
    if (!is_rotation(reference.R))
        throw std::invalid_argument("observer: reference attitude is not a rotation");
}

Innovation innovation(const OutputPair& y, const SymElement& xhat,
                      const ObserverConfig& cfg) {
    const Mat3 to_body = xhat.rot.transpose() * cfg.reference.R.transpose();
    const Vec3 mag_pred = to_body * cfg.mag_ref;
    const Vec3 accel_pred = to_body * cfg.accel_ref;
    const Vec3 mismatch = y.mag_dir.cross(mag_pred) + y.accel_dir.cross(accel_pred);
    return {cfg.k1 * mismatch, cfg.k2 * mismatch, mismatch};
}

SymElement observer_step(const SymElement& xhat, const OutputPair& y,
                         const Vec3& ang_accel_meas, const ObserverConfig& cfg, double dt) {
    const Innovation inn = innovation(y, xhat, cfg);
    const InputVelocity v{inn.ang_vel, ang_accel_meas + inn.ang_accel};
    return integrate_sym(xhat, v, cfg.reference, dt);
}

State estimate(const SymElement& xhat, const ObserverConfig& cfg) {
    return state_action(xhat, cfg.reference);
}

Diagnostics diagnostics(const State& truth, const SymElement& xhat,
                        const ObserverConfig& cfg) {
    const State est = estimate(xhat, cfg);
    const Vec3 a = truth.R.transpose() * cfg.accel_ref;
    const Vec3 m = truth.R.transpose() * cfg.mag_ref;
    const Vec3 a_est = est.R.transpose() * cfg.accel_ref;
    const Vec3 m_est = est.R.transpose() * cfg.mag_ref;
    const Vec3 omega_diff = truth.omega - est.omega;
    const Vec3 mismatch = m.cross(m_est) + a.cross(a_est);

    Diagnostics d;
    d.lyapunov = (1.0 - a_est.dot(a)) + (1.0 - m_est.dot(m)) +
                 omega_diff.squaredNorm() / (2.0 * cfg.k2);
    d.att_err_rad = rotation_angle(est.R * truth.R.transpose());
    d.omega_err = omega_diff.norm();
    d.innovation_norm = mismatch.norm();
    return d;
}

double commutation_residual(const State& truth, const SymElement& xhat,
                            const ObserverConfig& cfg) {
    const Mat3 R_err = estimate(xhat, cfg).R * truth.R.transpose();
    const Mat3 M = cfg.mag_ref * cfg.mag_ref.transpose() +
                   cfg.accel_ref * cfg.accel_ref.transpose();
    return (R_err.transpose() * M - M * R_err).norm();
}

}  // namespace attobs
