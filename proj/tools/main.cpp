// Command-line laboratory for the diffuse-interface kinetics library:
// profile solves, speed coefficients, direct simulation, parameter sweeps,
// residual scans and resolution budgets, all driven by one settings file.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kinlab/asymptotic.hpp"
#include "kinlab/config.hpp"
#include "kinlab/harness.hpp"
#include "kinlab/profiles.hpp"
#include "kinlab/simulator.hpp"
#include "kinlab/transmission.hpp"

using nlohmann::json;

namespace {

struct Shared {
    std::string config_path;
    std::string out_dir = "out";
    int jobs = 0;
};

kinlab::Settings load_settings(const Shared& shared) {
    if (shared.config_path.empty()) return kinlab::Settings();
    return kinlab::Settings::from_file(shared.config_path);
}

void ensure_out(const Shared& shared) {
    std::filesystem::create_directories(shared.out_dir);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

json fit_to_json(const kinlab::FitResult& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"rms_residual", fit.residual},
                {"points", fit.points.size()}};
}

struct TransmissionChain {
    kinlab::DoubleWellPotential psi;
    kinlab::Bar1D bar;
    kinlab::BarSolution hat, check;
    kinlab::InterfaceData data;
    double lambda = 0.0, mobility = 0.0;
    int points = 0;
    double half_width = 0.0;
};

TransmissionChain chain_from(const kinlab::Settings& s) {
    TransmissionChain ch{kinlab::potential_from_settings(s),
                         kinlab::bar_from_settings(s),
                         {},
                         {},
                         {},
                         s.number_or("model.lambda", 0.04),
                         s.number_or("model.mobility", 1.0),
                         s.integer_or("profiles.points", kinlab::kDefaultGridPoints),
                         s.number_or("profiles.half_width", 0.0)};
    ch.hat = kinlab::solve_hat(ch.bar);
    ch.check = kinlab::solve_check(ch.bar, ch.hat, ch.psi);
    ch.data = kinlab::interface_data(ch.bar, ch.hat, ch.check, ch.psi, 0.0, 0.0);
    return ch;
}

int cmd_profiles(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    const TransmissionChain ch = chain_from(s);
    const kinlab::ProfileSet prof = kinlab::solve_profiles(
        ch.psi, ch.data, ch.lambda, ch.mobility, ch.points, ch.half_width);

    ensure_out(shared);
    std::vector<std::vector<double>> rows;
    rows.reserve(prof.S0.grid.size());
    for (std::size_t i = 0; i < prof.S0.grid.size(); ++i)
        rows.push_back({prof.S0.grid[i], prof.S0.values[i], prof.S1.values[i],
                        prof.S2.values[i], prof.rho1[i], prof.rho2[i]});
    kinlab::write_csv(shared.out_dir + "/profiles.csv",
                      {"zeta", "S0", "S1", "S2", "rho1", "rho2"}, rows);

    write_json(shared.out_dir + "/summary.json",
               json{{"c1", prof.c1},
                    {"decay_rate", prof.a},
                    {"s00", prof.coeffs.s00},
                    {"s01", prof.coeffs.s01},
                    {"s10", prof.coeffs.s10},
                    {"s11", prof.coeffs.s11},
                    {"first_order_defect", prof.defect_F1},
                    {"second_order_defect", prof.defect_F2F3}});
    std::printf("profiles: %zu nodes written, c1 = %.9g, decay rate = %.9g\n",
                prof.S0.grid.size(), prof.c1, prof.a);
    return 0;
}

int cmd_kinetics(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    const double mu = s.number_or("model.mu", 0.01);
    const TransmissionChain ch = chain_from(s);
    const kinlab::KineticCoefficients coeffs = kinlab::compute_kinetic_coefficients(
        ch.psi, ch.data, ch.lambda, ch.mobility, ch.points);
    const double speed = kinlab::kinetic_relation(coeffs, mu, ch.lambda);
    const kinlab::SolvabilitySpeeds saddle =
        kinlab::solvability_speeds(ch.psi, ch.data, ch.lambda, ch.mobility, ch.points);

    ensure_out(shared);
    write_json(shared.out_dir + "/summary.json",
               json{{"mu", mu},
                    {"lambda", ch.lambda},
                    {"mobility", ch.mobility},
                    {"s00", coeffs.s00},
                    {"s01", coeffs.s01},
                    {"s10", coeffs.s10},
                    {"s11", coeffs.s11},
                    {"s0", coeffs.s0(ch.lambda)},
                    {"s1", coeffs.s1(ch.lambda)},
                    {"speed", speed},
                    {"saddle_s0", saddle.s0},
                    {"saddle_s1", saddle.s1},
                    {"saddle_s0_gap", std::abs(saddle.s0 - coeffs.s0(ch.lambda))},
                    {"saddle_s1_gap", std::abs(saddle.s1 - coeffs.s1(ch.lambda))}});
    std::printf("kinetics: s = %.9g (s0 = %.9g, s1 = %.9g; saddle gaps %.3g / %.3g)\n",
                speed, coeffs.s0(ch.lambda), coeffs.s1(ch.lambda),
                std::abs(saddle.s0 - coeffs.s0(ch.lambda)),
                std::abs(saddle.s1 - coeffs.s1(ch.lambda)));
    return 0;
}

int cmd_simulate(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    const kinlab::SimConfig cfg = kinlab::sim_from_settings(s);
    kinlab::SimState st = cfg.geometry == kinlab::Geometry::planar1d
                              ? kinlab::init_traveling(cfg)
                              : kinlab::init_radial(cfg);
    kinlab::run_until(st, cfg, cfg.t_end);

    ensure_out(shared);
    std::vector<std::vector<double>> series;
    series.reserve(st.time_history.size());
    for (std::size_t i = 0; i < st.time_history.size(); ++i)
        series.push_back({st.time_history[i], st.position_history[i],
                          st.speed_history[i], st.energy_history[i]});
    kinlab::write_csv(shared.out_dir + "/timeseries.csv",
                      {"t", "interface_position", "speed", "energy"}, series);

    std::vector<std::vector<double>> fields;
    fields.reserve(st.x.size());
    for (std::size_t i = 0; i < st.x.size(); ++i)
        fields.push_back({st.x[i], st.S[i], st.u[i], st.T[i]});
    kinlab::write_csv(shared.out_dir + "/final_state.csv", {"x", "S", "u", "T"}, fields);

    const kinlab::InterfaceTrack track = kinlab::track_interface(st);
    write_json(shared.out_dir + "/summary.json",
               json{{"t_end", st.t},
                    {"steps", st.steps_taken},
                    {"final_position", track.position},
                    {"final_speed", track.speed},
                    {"seed_speed", st.seed_speed},
                    {"max_overshoot", st.max_overshoot},
                    {"max_energy_rise", st.max_energy_rise},
                    {"elasticity_residual", kinlab::elasticity_residual(st, cfg)}});
    std::printf("simulate: %ld steps to t = %.6g, interface at %.9g, speed %.9g\n",
                st.steps_taken, st.t, track.position, track.speed);
    return 0;
}

json sweep_summary(const kinlab::SweepReport& rep) {
    json fits = json::object();
    for (const auto& [key, fit] : rep.fits) fits[key] = fit_to_json(fit);
    json errors = json::array();
    for (const auto& row : rep.rows)
        if (!row.ok)
            errors.push_back(json{{"mu", row.mu}, {"lambda", row.lambda},
                                  {"message", row.error}});
    return json{{"experiment", kinlab::experiment_name(rep.kind)},
                {"columns", rep.columns},
                {"rows", rep.rows.size()},
                {"failures", errors},
                {"certificates_ok", rep.certificates_ok},
                {"fits", fits}};
}

int cmd_sweep(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    kinlab::SweepSpec spec;
    spec.kind = kinlab::experiment_from_name(s.text_or("sweep.kind", "speed"));
    spec.mus = s.number_list("sweep.mu");
    spec.lambdas = s.has("sweep.lambda") ? s.number_list("sweep.lambda")
                                         : std::vector<double>{s.number_or("model.lambda", 0.04)};
    spec.base = kinlab::sim_from_settings(s);
    ensure_out(shared);
    spec.out_dir = shared.out_dir;
    const kinlab::SweepReport rep = kinlab::run_sweep(spec, shared.jobs);
    write_json(shared.out_dir + "/summary.json", sweep_summary(rep));
    std::printf("sweep(%s): %zu points, certificates %s, %zu fits\n",
                kinlab::experiment_name(rep.kind).c_str(), rep.rows.size(),
                rep.certificates_ok ? "ok" : "FAILED", rep.fits.size());
    return rep.certificates_ok ? 0 : 1;
}

int cmd_residuals(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    kinlab::SweepSpec spec;
    spec.kind = kinlab::ExperimentKind::residuals;
    spec.mus = s.has("sweep.mu") ? s.number_list("sweep.mu")
                                 : std::vector<double>{s.number_or("model.mu", 0.01)};
    spec.lambdas = {s.number_or("model.lambda", 0.04)};
    spec.base = kinlab::sim_from_settings(s);
    ensure_out(shared);
    spec.out_dir = shared.out_dir;
    const kinlab::SweepReport rep = kinlab::run_sweep(spec, shared.jobs);
    write_json(shared.out_dir + "/summary.json", sweep_summary(rep));
    std::printf("residuals: %zu points, %zu fitted slopes\n", rep.rows.size(),
                rep.fits.size());
    return 0;
}

int cmd_effort(const Shared& shared) {
    const kinlab::Settings s = load_settings(shared);
    const kinlab::EffortReport rep = kinlab::effort_report(
        s.number("effort.target_error"), s.number_or("effort.curvature_norm", 1.0),
        s.number_or("effort.s10_norm", 1.0), s.number_or("model.mobility", 1.0),
        s.number_or("effort.exponent", 2.0));
    ensure_out(shared);
    write_json(shared.out_dir + "/summary.json",
               json{{"target_error", rep.target_error},
                    {"curvature_norm", rep.curvature_norm},
                    {"s10_norm", rep.s10_norm},
                    {"mobility", rep.mobility},
                    {"exponent", rep.exponent},
                    {"degenerate", rep.degenerate},
                    {"E", rep.E},
                    {"F", rep.F},
                    {"B", rep.B},
                    {"e_num", rep.e_num}});
    std::printf("effort: E <= %.6g, F <= %.6g, B <= %.6g, e_num >= %.6g%s\n", rep.E,
                rep.F, rep.B, rep.e_num, rep.degenerate ? " (degenerate branch)" : "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffuse-interface kinetics laboratory"};
    app.require_subcommand(1);

    Shared shared;
    app.add_option("--config", shared.config_path, "settings file (key = value lines)");
    app.add_option("--out", shared.out_dir, "output directory (default: out)");
    app.add_option("--jobs", shared.jobs, "worker threads for sweeps (0 = auto)");

    auto* profiles = app.add_subcommand("profiles", "solve the layer profiles and export them");
    auto* kinetics = app.add_subcommand("kinetics", "speed coefficients and cross-checks");
    auto* simulate = app.add_subcommand("simulate", "direct time integration");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with log-log fits");
    auto* residuals = app.add_subcommand("residuals", "blended-field residual scan");
    auto* effort = app.add_subcommand("effort", "resolution and error budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (profiles->parsed()) return cmd_profiles(shared);
        if (kinetics->parsed()) return cmd_kinetics(shared);
        if (simulate->parsed()) return cmd_simulate(shared);
        if (sweep->parsed()) return cmd_sweep(shared);
        if (residuals->parsed()) return cmd_residuals(shared);
        if (effort->parsed()) return cmd_effort(shared);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
