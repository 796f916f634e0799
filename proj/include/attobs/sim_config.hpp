#pragma once

#include <cstdint>
#include <string>

#include "attobs/sensors.hpp"
#include "attobs/trajectory.hpp"
#include "attobs/types.hpp"

namespace attobs {

/// Rig with the published run parameters: unit lever arm and 0.3 noise std
/// on both the accelerometer and magnetometer channels.
inline RigConfig default_rig() {
    RigConfig rig = RigConfig::tetrahedral(1.0);
    rig.accel_noise_std = 0.3;
    rig.mag_noise_std = 0.3;
    return rig;
}

/// Full description of one simulation run. Loadable from a flat TOML file;
/// see load_sim_config for the key set.
struct SimConfig {
    double dt = 1e-3;       ///< s
    double duration = 60.0; ///< s
    std::uint64_t seed = 0;
    double k1 = 3.0;
    double k2 = 1.0;
    RigConfig rig = default_rig();
    bool noise_on = true;
    Trajectory trajectory;

    enum class ReferenceMode { Random, Explicit };
    ReferenceMode reference_mode = ReferenceMode::Random;
    State reference;  ///< used when reference_mode == Explicit

    enum class InitMode { Random, Explicit };
    InitMode init_mode = InitMode::Random;
    SymElement init;  ///< used when init_mode == Explicit

    Mat3 initial_attitude = Mat3::Identity();  ///< ground-truth attitude at t = 0
    std::string out_dir = "out";

    /// Throws std::invalid_argument on invalid values (dt <= 0,
    /// duration < dt, non-positive gains, rig violations, ...).
    void validate() const;
};

/// Parses a flat TOML config file. Recognised keys:
///   dt, duration, seed, k1, k2, l, accel_noise_std, mag_noise_std,
///   noise_on, trajectory ("default" | "constant_rate" | "table"),
///   trajectory_rate = [x,y,z], trajectory_table = "file.csv",
///   reference_mode ("random" | "explicit"), reference_attitude = [9 row-major],
///   reference_ang_vel = [x,y,z], init_mode ("random" | "explicit"),
///   init_rot = [9 row-major], init_vel = [x,y,z],
///   initial_attitude = [9 row-major], gravity, mag_dir = [x,y,z], out_dir.
/// Explicit rotations are polar-projected onto SO(3) at load, then validated.
/// Throws std::runtime_error on I/O or syntax errors, std::invalid_argument
/// on semantic errors.
SimConfig load_sim_config(const std::string& path);

}  // namespace attobs
