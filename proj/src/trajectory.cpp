#include "attobs/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attobs {

TrajectorySample default_trajectory(double t) {
    if (t < 0.0) throw std::invalid_argument("trajectory: t must be non-negative");
    return {Vec3(std::sin(0.1 * t), std::cos(0.1 * t), 1.0),
            Vec3(0.1 * std::cos(0.1 * t), -0.1 * std::sin(0.1 * t), 0.0)};
}

Trajectory Trajectory::default_profile() {
    return {};
}

Trajectory Trajectory::constant_rate(const Vec3& omega) {
    Trajectory traj;
    traj.kind_ = Kind::ConstantRate;
    traj.rate_ = omega;
    return traj;
}

Trajectory Trajectory::from_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trajectory table: cannot open " + path);
    Trajectory traj;
    traj.kind_ = Kind::Table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {  // header
            first = false;
            continue;
        }
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        if (values.size() != 7)
            throw std::runtime_error("trajectory table: expected 7 columns in " + path);
        if (!traj.table_t_.empty() && values[0] <= traj.table_t_.back())
            throw std::runtime_error("trajectory table: timestamps must increase in " + path);
        traj.table_t_.push_back(values[0]);
        traj.table_v_.push_back({Vec3(values[1], values[2], values[3]),
                                 Vec3(values[4], values[5], values[6])});
    }
    if (traj.table_t_.size() < 2)
        throw std::runtime_error("trajectory table: need at least 2 rows in " + path);
    return traj;
}

TrajectorySample Trajectory::sample(double t) const {
    switch (kind_) {
        case Kind::Default:
            return default_trajectory(t);
        case Kind::ConstantRate:
            return {rate_, Vec3::Zero()};
        case Kind::Table: {
            if (t <= table_t_.front()) return table_v_.front();
            if (t >= table_t_.back()) return table_v_.back();
            const auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
            const size_t hi = static_cast<size_t>(it - table_t_.begin());
            const size_t lo = hi - 1;
            const double u = (t - table_t_[lo]) / (table_t_[hi] - table_t_[lo]);
            return {(1.0 - u) * table_v_[lo].omega + u * table_v_[hi].omega,
                    (1.0 - u) * table_v_[lo].ang_accel + u * table_v_[hi].ang_accel};
        }
    }
    throw std::logic_error("trajectory: unknown kind");
}

}  // namespace attobs
