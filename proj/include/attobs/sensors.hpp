#pragma once

#include <array>
#include <optional>
#include <random>

#include "attobs/types.hpp"

namespace attobs {

/// Geometry and noise model of the sensor rig: four body-fixed accelerometers
/// in a tetrahedral placement plus one magnetometer.
struct RigConfig {
    double lever_arm = 1.0;                ///< separation l (m)
    std::array<Vec3, 4> offsets{};         ///< accelerometer positions in the body frame (m)
    double gravity = 9.81;                 ///< m/s^2
    Vec3 mag_dir = Vec3(1, 0, 1).normalized();  ///< inertial magnetic field direction (unit)
    double accel_noise_std = 0.0;          ///< per-axis accelerometer noise (m/s^2)
    double mag_noise_std = 0.0;            ///< per-axis direction noise before renormalisation

    /// Canonical placement: origin plus l along each body axis.
    static RigConfig tetrahedral(double lever_arm);

    /// Throws std::invalid_argument on: non-positive lever arm, coplanar
    /// offsets, non-unit mag_dir, or mag_dir within 1 degree of e3.
    void validate() const;
};

/// One time-stamped sample of all sensors, body frame. The magnetometer
/// direction is unit-norm (renormalised after noise).
struct MeasurementFrame {
    double t = 0.0;
    std::array<Vec3, 4> accel{};
    Vec3 mag = Vec3::UnitZ();
};

/// Normalised direction outputs consumed by the observer.
struct OutputPair {
    Vec3 accel_dir;  ///< unit, body frame
    Vec3 mag_dir;    ///< unit, body frame
};

/// Noise-free reading of accelerometer `i`:
///   a_i = g R^T e3 + lin_accel + skew(ang_accel) r_i + skew(omega)^2 r_i.
/// The common term models the gravity reaction under the quasi-static
/// assumption; `lin_accel` (body frame) probes deviations from it and
/// defaults to zero. Throws std::out_of_range for i outside {0,1,2,3}.
Vec3 ideal_accelerometer(const State& x, const Vec3& ang_accel, const RigConfig& rig,
                         int i, const Vec3& lin_accel = Vec3::Zero());

/// Noise-free frame: four accelerometer readings plus mag = R^T mag_dir.
MeasurementFrame ideal_frame(const State& x, const Vec3& ang_accel, const RigConfig& rig,
                             double t, const Vec3& lin_accel = Vec3::Zero());

/// Angular acceleration from accelerometer differences. Exact for noise-free
/// inputs of the rig model, independent of the angular velocity and of any
/// common-mode term. Throws std::invalid_argument for lever_arm <= 0.
Vec3 extract_ang_accel(const MeasurementFrame& frame, double lever_arm);

/// Normalised (accel, mag) direction pair, or nullopt when the reference
/// accelerometer reading is degenerate (norm <= 1e-6, free-fall-like); the
/// caller decides whether to skip the correction for that step.
std::optional<OutputPair> output_directions(const MeasurementFrame& frame);

/// Owns one noise stream per sensor channel (4 accelerometers + 1 magnetometer),
/// seeded deterministically. Use from a single thread.
class SensorSim {
  public:
    SensorSim(const RigConfig& rig, std::uint64_t seed, bool noise_on);

    /// Simulated reading of accelerometer `i`, drawing per-axis Gaussian noise
    /// from that channel's stream when noise is enabled.
    Vec3 accelerometer(const State& x, const Vec3& ang_accel, int i,
                       const Vec3& lin_accel = Vec3::Zero());

    /// Full frame at time t; the magnetometer direction is renormalised after
    /// noise is applied.
    MeasurementFrame frame(const State& x, const Vec3& ang_accel, double t,
                           const Vec3& lin_accel = Vec3::Zero());

    const RigConfig& rig() const { return rig_; }

  private:
    RigConfig rig_;
    bool noise_on_;
    std::array<std::mt19937_64, 5> streams_;

    Vec3 gaussian3(int channel, double std_dev);
};

}  // namespace attobs
