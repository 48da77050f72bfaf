#ifndef KINLAB_SIMULATOR_HPP
#define KINLAB_SIMULATOR_HPP

#include <vector>

#include "kinlab/asymptotic.hpp"
#include "kinlab/potential.hpp"
#include "kinlab/profiles.hpp"
#include "kinlab/transmission.hpp"

namespace kinlab {

enum class Geometry { planar1d, radial2d, radial3d };

// Direct time integration of the coupled model: quasi-static elasticity plus
// the semi-implicit order-parameter update. Radial modes run without stress
// (eps_bar plays no role there) to isolate the curvature part of the speed.
struct SimConfig {
    Geometry geometry = Geometry::planar1d;
    double mu = 0.01;
    double lambda = 0.04;
    double mobility = 1.0;  // c
    DoubleWellPotential psi = make_quartic(1.0);

    Bar1D bar;                     // planar mode
    double initial_radius = 0.25;  // radial mode: seed interface radius
    double domain_length = 1.0;    // radial mode: domain [0, domain_length]

    int grid_points = 0;       // 0 = automatic (dx ~ B/16)
    double dt = 0.0;           // 0 = automatic; always capped by stable_dt()
    double t_end = 0.1;
    double output_every = 0.0;  // 0 = automatic (t_end / 50)
    int profile_points = kDefaultGridPoints;  // seeding profile resolution

    double width() const;                // B = sqrt(mu * lambda)
    int effective_grid_points() const;   // grid_points or the automatic choice
    double dx() const;
    double stable_dt() const;  // 0.2 * mu * sqrt(lambda) / (c * max |psi''|)
    double effective_dt() const;
    double effective_output_every() const;
    int dimension() const;  // 1, 2 or 3
    // Grid resolves the layer (dx <= B/8), mu in (0, e^-2], lambda in (0, 1],
    // positive mobility/times, radial seed inside the domain. Throws on breach.
    void validate() const;
};

struct SimState {
    double t = 0.0;
    std::vector<double> x;  // node coordinates (radius in radial mode)
    std::vector<double> S, u, T;

    // output-cadence records
    std::vector<double> time_history, position_history, speed_history,
        energy_history;

    double dt_current = 0.0;  // halved on rejected steps, then kept
    long steps_taken = 0;
    double max_overshoot = 0.0;    // worst excursion of S outside [0,1]
    double max_energy_rise = 0.0;  // worst per-step energy increase / |E0|
    double energy_scale = 0.0;     // |E0| reference for the rise monitor
    double last_energy = 0.0;
    bool have_energy = false;
    double seed_speed = 0.0;  // kinetic-relation speed used to seed the run
};

// Planar traveling-interface seed: order parameter from the blended
// asymptotic field at the configured interface position, displacement from
// the instantaneous elastic solve.
SimState init_traveling(const SimConfig& config);

// Radial seed: S = 1 inside radius initial_radius, S = 0 outside, with the
// canonical layer shape across the transition.
SimState init_radial(const SimConfig& config);

// One accepted time step: elastic solve for the current order parameter,
// explicit driving force, implicit Laplacian (homogeneous Neumann), then a
// fresh elastic solve so the stored state is self-consistent. A step is
// rejected and retried with dt halved when its order-parameter increment
// exceeds 0.1 in sup norm or when it pushes S freshly outside [0,1] by more
// than 5e-4. Throws when the overshoot monitor trips: the allowed band is
// [0,1] widened by sqrt(mu) * |eps_bar| * max|T| / min psi'' (the legitimate
// stress-induced shift of the far-field equilibria) plus 1e-3.
void step(SimState& state, const SimConfig& config);

struct InterfaceTrack {
    double position = 0.0;
    double speed = 0.0;
};

// Position: linear interpolation of the unique S = 1/2 crossing (multiple
// crossings raise a topology-change error). Speed: centered difference of
// position over a sliding window of the 5 most recent recorded outputs.
InterfaceTrack track_interface(const SimState& state);

// Trapezoid integral of T^2/(2D) + psi(S)/sqrt(mu) + (sqrt(mu) lambda / 2)
// |dS/dx|^2 (radial modes use the volume weight r^{d-1} and no stress term).
double free_energy(const SimState& state, const SimConfig& config);

// Max nodal residual of the discrete elastic balance the solver enforces;
// machine-small right after any elastic solve.
double elasticity_residual(const SimState& state, const SimConfig& config);

// Advance to t_target, recording (t, position, speed, energy) on the output
// cadence and maintaining the overshoot / energy-rise monitors.
void run_until(SimState& state, const SimConfig& config, double t_target);

struct SpeedReport {
    double mu = 0.0, lambda = 0.0, mobility = 0.0;
    double s_ac = 0.0;          // discretization-extrapolated measured speed
    double s_ac_refined = 0.0;  // fine-grid dt-extrapolated speed (no dx step)
    double measured_position = 0.0;  // fitted position at the window center
    double s0 = 0.0, s10 = 0.0, s11 = 0.0, s1 = 0.0;
    double gap0 = 0.0;           // |s_ac - s0|
    double gap1 = 0.0;           // |s_ac - s0 - sqrt(mu) s1|
    bool certificate_ok = false; // coarse/fine dt-ladders agree to 0.1*gap0
};

// Measures the interface speed against the kinetic relation with the
// discretization error extrapolated away. Six runs (two grids x time steps
// dt, dt/2, dt/4); each run's speed and position come from a least-squares
// cubic fit of the tracked position over the last 60% of the outputs, and
// each run is compared against the kinetic relation evaluated at its own
// measured position. A three-point Richardson ladder in dt (the splitting
// error carries both dt and dt^2 terms that do not shrink with mu, because
// the stable step is tied to the mu-proportional relaxation time) followed
// by a two-point ladder in dx gives the reported gaps; the certificate
// requires the two independent dt-ladders to agree to 10% of gap0.
SpeedReport measure_speed_vs_kinetics(const SimConfig& config);

}  // namespace kinlab

#endif  // KINLAB_SIMULATOR_HPP
