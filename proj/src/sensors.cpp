#include "attobs/sensors.hpp"

#include <cmath>
#include <stdexcept>

#include "attobs/geometry.hpp"

namespace attobs {

RigConfig RigConfig::tetrahedral(double lever_arm) {
    RigConfig rig;
    rig.lever_arm = lever_arm;
    rig.offsets = {Vec3::Zero(), lever_arm * Vec3::UnitX(), lever_arm * Vec3::UnitY(),
                   lever_arm * Vec3::UnitZ()};
    return rig;
}

void RigConfig::validate() const {
    if (!(lever_arm > 0.0)) throw std::invalid_argument("rig: lever_arm must be positive");
    Mat3 spread;
    spread.col(0) = offsets[1] - offsets[0];
    spread.col(1) = offsets[2] - offsets[0];
    spread.col(2) = offsets[3] - offsets[0];
    if (std::abs(spread.determinant()) <= 0.0)
        throw std::invalid_argument("rig: accelerometer offsets are coplanar");
    if (std::abs(mag_dir.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("rig: mag_dir must be unit-norm");
    constexpr double kOneDegree = M_PI / 180.0;
    if (std::abs(mag_dir.dot(Vec3::UnitZ())) > std::cos(kOneDegree))
        throw std::invalid_argument("rig: mag_dir too close to the vertical");
    if (accel_noise_std < 0.0 || mag_noise_std < 0.0)
        throw std::invalid_argument("rig: noise std must be non-negative");
}

Vec3 ideal_accelerometer(const State& x, const Vec3& ang_accel, const RigConfig& rig,
                         int i, const Vec3& lin_accel) {
    if (i < 0 || i >= 4) throw std::out_of_range("accelerometer index out of range");
    const Vec3 common = rig.gravity * (x.R.transpose() * Vec3::UnitZ()) + lin_accel;
    const Mat3 w = skew(x.omega);
    return common + skew(ang_accel) * rig.offsets[static_cast<size_t>(i)] +
           w * (w * rig.offsets[static_cast<size_t>(i)]);
}

MeasurementFrame ideal_frame(const State& x, const Vec3& ang_accel, const RigConfig& rig,
                             double t, const Vec3& lin_accel) {
    MeasurementFrame frame;
    frame.t = t;
    for (int i = 0; i < 4; ++i)
        frame.accel[static_cast<size_t>(i)] = ideal_accelerometer(x, ang_accel, rig, i, lin_accel);
    frame.mag = (x.R.transpose() * rig.mag_dir).normalized();
    return frame;
}

Vec3 extract_ang_accel(const MeasurementFrame& frame, double lever_arm) {
    if (!(lever_arm > 0.0))
        throw std::invalid_argument("extract_ang_accel: lever_arm must be positive");
    const Vec3& a0 = frame.accel[0];
    const Vec3 d1 = frame.accel[1] - a0;
    const Vec3 d2 = frame.accel[2] - a0;
    const Vec3 d3 = frame.accel[3] - a0;
    // The symmetric rate products cancel pairwise in these differences,
    // leaving twice the angular acceleration scaled by the arm.
    return Vec3(d2.z() - d3.y(), d3.x() - d1.z(), d1.y() - d2.x()) / (2.0 * lever_arm);
}

std::optional<OutputPair> output_directions(const MeasurementFrame& frame) {
    const double n = frame.accel[0].norm();
    if (n <= 1e-6) return std::nullopt;
    return OutputPair{frame.accel[0] / n, frame.mag};
}

SensorSim::SensorSim(const RigConfig& rig, std::uint64_t seed, bool noise_on)
    : rig_(rig), noise_on_(noise_on) {
    rig_.validate();
    std::mt19937_64 seeder(seed);
    for (auto& stream : streams_) stream.seed(seeder());
}

Vec3 SensorSim::gaussian3(int channel, double std_dev) {
    if (!noise_on_ || std_dev <= 0.0) return Vec3::Zero();
    std::normal_distribution<double> gauss(0.0, std_dev);
    auto& stream = streams_[static_cast<size_t>(channel)];
    return {gauss(stream), gauss(stream), gauss(stream)};
}

Vec3 SensorSim::accelerometer(const State& x, const Vec3& ang_accel, int i,
                              const Vec3& lin_accel) {
    return ideal_accelerometer(x, ang_accel, rig_, i, lin_accel) +
           gaussian3(i, rig_.accel_noise_std);
}

MeasurementFrame SensorSim::frame(const State& x, const Vec3& ang_accel, double t,
                                  const Vec3& lin_accel) {
    MeasurementFrame out;
    out.t = t;
    for (int i = 0; i < 4; ++i)
        out.accel[static_cast<size_t>(i)] = accelerometer(x, ang_accel, i, lin_accel);
    out.mag = (x.R.transpose() * rig_.mag_dir + gaussian3(4, rig_.mag_noise_std)).normalized();
    return out;
}

}  // namespace attobs
