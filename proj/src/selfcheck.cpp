#include "attobs/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "attobs/geometry.hpp"
#include "attobs/kinematics.hpp"
#include "attobs/sensors.hpp"

namespace attobs {
namespace {

State random_state(std::mt19937_64& rng) {
    return {random_rotation(rng), random_vec3(rng)};
}

SymElement random_sym(std::mt19937_64& rng) {
    return {random_rotation(rng), random_vec3(rng)};
}

/// Max deviation from the group laws (associativity, identity, inverse) and
/// the right-action composition law of all three actions.
double group_axiom_error(std::mt19937_64& rng, int samples) {
    double worst = 0.0;
    const auto track = [&worst](double e) { worst = std::max(worst, e); };
    for (int i = 0; i < samples; ++i) {
        const SymElement X = random_sym(rng), Y = random_sym(rng), Z = random_sym(rng);
        const State x = random_state(rng);
        const InputVelocity v{random_vec3(rng), random_vec3(rng)};
        const Vec3 y = random_vec3(rng);

        const SymElement ab_c = (X * Y) * Z;
        const SymElement a_bc = X * (Y * Z);
        track((ab_c.rot - a_bc.rot).norm());
        track((ab_c.vel - a_bc.vel).norm());

        const SymElement id_left = SymElement::Identity() * X;
        const SymElement inv = X * X.inverse();
        track((id_left.rot - X.rot).norm());
        track((id_left.vel - X.vel).norm());
        track((inv.rot - Mat3::Identity()).norm());
        track(inv.vel.norm());

        // Right actions: acting by X then Y equals acting by X*Y.
        const State x_seq = state_action(Y, state_action(X, x));
        const State x_prod = state_action(X * Y, x);
        track((x_seq.R - x_prod.R).norm());
        track((x_seq.omega - x_prod.omega).norm());

        const InputVelocity v_seq = velocity_action(Y, velocity_action(X, v));
        const InputVelocity v_prod = velocity_action(X * Y, v);
        track((v_seq.ang_vel - v_prod.ang_vel).norm());
        track((v_seq.ang_accel - v_prod.ang_accel).norm());

        track((output_action(Y, output_action(X, y)) - output_action(X * Y, y)).norm());
    }
    return worst;
}

/// Max finite-difference defect of the lift property: stepping the group
/// element along the lifted dynamics and projecting must reproduce the
/// system dynamics at the projected state.
double lift_property_error(std::mt19937_64& rng, int samples, double h) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SymElement X = random_sym(rng);
        const State ref = random_state(rng);
        const InputVelocity v{random_vec3(rng), random_vec3(rng)};

        const SymDerivative D = lifted_dynamics(X, v, ref);
        const Vec3 spin = vee(D.drot * X.rot.transpose());

        SymElement fwd{so3_exp(spin * h) * X.rot, X.vel + D.dvel * h};
        SymElement bwd{so3_exp(-spin * h) * X.rot, X.vel - D.dvel * h};
        const State x_fwd = state_action(fwd, ref);
        const State x_bwd = state_action(bwd, ref);

        const StateDerivative want = system_dynamics(state_action(X, ref), v);
        const Mat3 dR_num = (x_fwd.R - x_bwd.R) / (2.0 * h);
        const Vec3 dw_num = (x_fwd.omega - x_bwd.omega) / (2.0 * h);
        worst = std::max(worst, (dR_num - want.dR).norm());
        worst = std::max(worst, (dw_num - want.domega).norm());
    }
    return worst;
}

/// Max recovery error of the angular acceleration from noise-free frames,
/// including a random common-mode term on top of gravity.
double extraction_error(std::mt19937_64& rng, int samples) {
    const RigConfig rig = RigConfig::tetrahedral(0.75);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const State x = random_state(rng);
        const Vec3 theta = random_vec3(rng);
        const Vec3 common = random_vec3(rng);
        const MeasurementFrame frame = ideal_frame(x, theta, rig, 0.0, common);
        worst = std::max(worst, (extract_ang_accel(frame, rig.lever_arm) - theta).norm());
    }
    return worst;
}

bool report(std::ostream& os, const char* name, double err, double tol) {
    const bool ok = err <= tol;
    os << (ok ? "[PASS] " : "[FAIL] ") << name << ": max error " << err
       << " (tol " << tol << ")\n";
    return ok;
}

}  // namespace

bool run_selfcheck(std::ostream& os) {
    std::mt19937_64 rng(0x5eedc0defull);
    bool ok = true;
    ok &= report(os, "group axioms and action laws", group_axiom_error(rng, 300), 1e-12);
    ok &= report(os, "lift consistency (finite differences)",
                 lift_property_error(rng, 50, 1e-6), 1e-6);
    ok &= report(os, "angular-acceleration extraction", extraction_error(rng, 300), 1e-12);
    return ok;
}

}  // namespace attobs
