#pragma once

#include <string>
#include <vector>

#include "attobs/sensors.hpp"

namespace attobs {

/// One logged step of a run. Fields mirror the trace CSV columns.
struct TraceRecord {
    double t = 0.0;
    double att_err_rad = 0.0;
    double omega_err = 0.0;
    double lyapunov = 0.0;
    double innovation_norm = 0.0;
    double commutation_residual = 0.0;
};

/// Writes `t,att_err_rad,omega_err,lyapunov,innovation_norm,commutation_residual`
/// rows at full double precision (17 significant digits, exact round-trip).
/// Throws std::runtime_error with path context on I/O failure or empty trace.
void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path);

std::vector<TraceRecord> read_trace_csv(const std::string& path);

/// Measurement log with header `t,a0x,a0y,a0z,a1x,...,a3z,mx,my,mz`,
/// full double precision.
void write_measurement_csv(const std::vector<MeasurementFrame>& log, const std::string& path);

std::vector<MeasurementFrame> read_measurement_csv(const std::string& path);

/// Static SVG chart of att_err_rad, omega_err and lyapunov against time on a
/// log-scale value axis. Throws std::runtime_error on empty trace or I/O
/// failure.
void write_plot_svg(const std::vector<TraceRecord>& trace, const std::string& path);

}  // namespace attobs
