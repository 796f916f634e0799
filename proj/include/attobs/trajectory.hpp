#pragma once

#include <string>
#include <vector>

#include "attobs/types.hpp"

namespace attobs {

/// Angular velocity and its time derivative at one instant.
struct TrajectorySample {
    Vec3 omega;
    Vec3 ang_accel;
};

/// Built-in slow-precession profile: omega = (sin 0.1t, cos 0.1t, 1) with its
/// analytic derivative. Throws std::invalid_argument for t < 0.
TrajectorySample default_trajectory(double t);

/// Ground-truth rotation profile driving a run. The angular velocity is
/// evaluated analytically (or interpolated, for tables); only the attitude is
/// integrated.
class Trajectory {
  public:
    enum class Kind { Default, ConstantRate, Table };

    Trajectory() = default;
    static Trajectory default_profile();
    static Trajectory constant_rate(const Vec3& omega);
    /// Piecewise-linear table loaded from CSV with header
    /// t,wx,wy,wz,dwx,dwy,dwz (time, angular velocity, angular acceleration).
    static Trajectory from_table(const std::string& path);

    TrajectorySample sample(double t) const;
    Kind kind() const { return kind_; }

  private:
    Kind kind_ = Kind::Default;
    Vec3 rate_ = Vec3::Zero();
    std::vector<double> table_t_;
    std::vector<TrajectorySample> table_v_;
};

}  // namespace attobs
