#pragma once

#include <vector>

#include "attobs/observer.hpp"
#include "attobs/sim_config.hpp"
#include "attobs/trace_io.hpp"

namespace attobs {

/// Everything produced by one run: the per-step diagnostics trace, the raw
/// measurement log, the realised observer configuration (with the drawn
/// reference) and initial condition, and the terminal states.
struct RunResult {
    std::vector<TraceRecord> trace;
    std::vector<MeasurementFrame> log;
    ObserverConfig observer;
    SymElement init;
    State final_truth;
    State final_estimate;
};

/// Runs the closed loop: per step, advance the ground truth along the
/// configured rotation profile, simulate a measurement frame, extract the
/// angular acceleration, form the direction outputs, and step the observer.
/// Deterministic for a fixed config and seed.
RunResult run(const SimConfig& cfg);

/// Re-runs the observer against a recorded measurement log instead of
/// simulated sensors. The reference, initial condition and ground truth are
/// reconstructed from the config, so a log recorded with the same config
/// reproduces the original run.
RunResult replay(const SimConfig& cfg, const std::vector<MeasurementFrame>& log);

}  // namespace attobs
