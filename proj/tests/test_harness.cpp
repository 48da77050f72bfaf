#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinlab/config.hpp"
#include "kinlab/harness.hpp"

using kinlab::ExperimentKind;
using kinlab::Settings;
using kinlab::SweepSpec;

namespace {

std::filesystem::path fresh_dir(const std::string& leaf) {
    const auto dir = std::filesystem::temp_directory_path() / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("effort budget arithmetic") {
    const kinlab::EffortReport r = kinlab::effort_report(0.1, 1.0, 1.0, 1.0, 2.0);
    CHECK(!r.degenerate);
    CHECK(r.E == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.F == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(r.B == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(r.e_num == doctest::Approx(2500.0).epsilon(1e-13));

    // halving the target cuts the budget 4x (both factors are linear in it),
    // so the numerical effort grows 4^2 = 16x at exponent 2
    const kinlab::EffortReport h = kinlab::effort_report(0.05, 1.0, 1.0, 1.0, 2.0);
    CHECK(h.B / r.B == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(h.e_num / r.e_num == doctest::Approx(16.0).epsilon(1e-12));

    // vanishing first-order coefficient: F degrades to sqrt(target)
    const kinlab::EffortReport d1 = kinlab::effort_report(0.1, 1.0, 0.0, 1.0, 2.0);
    const kinlab::EffortReport d4 = kinlab::effort_report(0.4, 1.0, 0.0, 1.0, 2.0);
    CHECK(d1.degenerate);
    CHECK(d1.F == doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
    CHECK(d1.B == doctest::Approx(0.1 * std::sqrt(0.1)).epsilon(1e-14));
    // B ~ target^{3/2}, so effort ~ target^{-3p/2}: ratio 4^3 = 64 at p = 2
    CHECK(d1.e_num / d4.e_num == doctest::Approx(64.0).epsilon(1e-12));

    CHECK_THROWS_AS(kinlab::effort_report(0.0, 1.0, 1.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::effort_report(0.1, 0.0, 1.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::effort_report(0.1, 1.0, -1.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::effort_report(0.1, 1.0, 1.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::effort_report(0.1, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("log-log line fitting") {
    std::vector<double> x = {0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.0 * std::pow(x[i], 1.5);
    const kinlab::FitResult fit = kinlab::fit_loglog(x, y);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.points.size() == 5);
    CHECK(fit.points[1][0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(kinlab::fit_loglog({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::fit_loglog({1, 2, 3, 4}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::fit_loglog({1, 2, 3, -4}, {1, 2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::fit_loglog({1, 2, 3, 4}, {1, 2, 0, 4}), std::invalid_argument);
}

TEST_CASE("deterministic csv output") {
    const auto dir = fresh_dir("kinlab_csv_test");
    const std::string path = (dir / "table.csv").string();
    kinlab::write_csv(path, {"a", "b"}, {{1.0, 2.5}, {3.25, -4.0}});
    CHECK(slurp(path) == "a,b\n1,2.5\n3.25,-4\n");

    CHECK_THROWS_AS(kinlab::write_csv(path, {"a", "b"}, {{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::write_csv((dir / "missing" / "f.csv").string(), {"a"}, {}),
                    std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiment names round-trip") {
    for (ExperimentKind k : {ExperimentKind::speed, ExperimentKind::residuals,
                             ExperimentKind::width, ExperimentKind::radial})
        CHECK(kinlab::experiment_from_name(kinlab::experiment_name(k)) == k);
    CHECK_THROWS_AS(kinlab::experiment_from_name("frobnicate"), std::invalid_argument);
}

TEST_CASE("sweep specification validation") {
    SweepSpec spec;
    spec.mus = {0.01};
    spec.lambdas = {0.04};
    CHECK_NOTHROW(spec.validate());

    SweepSpec empty = spec;
    empty.mus.clear();
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

    SweepSpec mismatch = spec;
    mismatch.kind = ExperimentKind::radial;  // still planar geometry
    CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);

    SweepSpec planar_on_radial = spec;
    planar_on_radial.base.geometry = kinlab::Geometry::radial2d;
    CHECK_THROWS_AS(planar_on_radial.validate(), std::invalid_argument);

    // matching zone 3 B |log mu| / a must fit between interface and walls
    SweepSpec cramped = spec;
    cramped.mus = {std::exp(-2.0)};
    cramped.lambdas = {1.0};
    CHECK_THROWS_AS(cramped.validate(), std::invalid_argument);
}

TEST_CASE("width sweep produces a clean report and csv") {
    const auto dir = fresh_dir("kinlab_sweep_test");
    SweepSpec spec;
    spec.kind = ExperimentKind::width;
    spec.mus = {0.01};
    spec.lambdas = {0.04};
    spec.base.bar.eps_bar = 0.0;
    spec.base.bar.u0 = 0.0;
    spec.base.bar.uL = 0.0;
    spec.base.t_end = 0.002;
    spec.base.output_every = 0.001;
    spec.base.profile_points = 2001;
    spec.out_dir = dir.string();

    const kinlab::SweepReport rep = kinlab::run_sweep(spec, 1);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].ok);
    CHECK(rep.rows[0].error.empty());
    CHECK(rep.certificates_ok);
    REQUIRE(rep.columns.size() == 2);
    CHECK(rep.columns[1] == "width_over_B");
    CHECK(rep.rows[0].values[1] ==
          doctest::Approx(std::sqrt(2.0) * std::log(9.0)).epsilon(0.02));
    CHECK(std::filesystem::exists(dir / "width.csv"));
    const std::string csv = slurp(dir / "width.csv");
    CHECK(csv.rfind("mu,lambda,ok,width,width_over_B\n", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep failures are captured, not fatal") {
    SweepSpec spec;
    spec.kind = ExperimentKind::speed;
    spec.mus = {0.01};
    spec.lambdas = {0.04};
    spec.base.bar.interface = 0.45;
    spec.base.bar.eps_bar = 1.0;
    spec.base.bar.uL = 0.53;
    spec.base.t_end = 0.004;        // only 3 outputs: the speed window
    spec.base.output_every = 0.002; // cannot form, so the point must fail
    spec.base.profile_points = 2001;

    const kinlab::SweepReport rep = kinlab::run_sweep(spec, 1);
    REQUIRE(rep.rows.size() == 1);
    CHECK(!rep.rows[0].ok);
    CHECK(!rep.rows[0].error.empty());
    CHECK(!rep.certificates_ok);
    REQUIRE(rep.rows[0].values.size() == rep.columns.size());
    CHECK(std::isnan(rep.rows[0].values[0]));
}

TEST_CASE("settings parsing") {
    const Settings s = Settings::from_string(
        "# leading comment\n"
        "\n"
        "model.mu = 0.02   # trailing comment\n"
        "sim.geometry = radial3d\n"
        "sweep.mu = 1e-3, 2e-3 4e-3\n"
        "sim.grid_points = 257\n");
    CHECK(s.has("model.mu"));
    CHECK(!s.has("model.lambda"));
    CHECK(s.number("model.mu") == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(s.number_or("model.lambda", 0.5) == 0.5);
    CHECK(s.text("sim.geometry") == "radial3d");
    CHECK(s.text_or("potential.kind", "quartic") == "quartic");
    CHECK(s.integer_or("sim.grid_points", 0) == 257);
    const std::vector<double> mus = s.number_list("sweep.mu");
    REQUIRE(mus.size() == 3);
    CHECK(mus[0] == 1e-3);
    CHECK(mus[2] == 4e-3);

    CHECK_THROWS_AS(s.number("model.lambda"), std::invalid_argument);      // missing
    CHECK_THROWS_AS(s.number("sim.geometry"), std::invalid_argument);      // not a number
    CHECK_THROWS_AS(s.integer_or("model.mu", 1), std::invalid_argument);   // not integral
    CHECK_THROWS_AS(Settings::from_string("model.nope = 1"), std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("model.mu = 1\nmodel.mu = 2"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("model.mu 1"), std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("model.mu ="), std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("= 3"), std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("model.mu = 1x"), std::invalid_argument);
    CHECK_THROWS_AS(Settings::from_string("sweep.mu = 1 2 x").number_list("sweep.mu"),
                    std::invalid_argument);
}

TEST_CASE("potential from settings") {
    const auto quartic = kinlab::potential_from_settings(Settings());
    CHECK(quartic.eval(0.5, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

    const auto scaled = kinlab::potential_from_settings(
        Settings::from_string("potential.kind = quartic\npotential.amplitude = 2\n"));
    CHECK(scaled.eval(0.5, 0) == doctest::Approx(2.0 / 16.0).epsilon(1e-15));

    const auto bump = kinlab::potential_from_settings(
        Settings::from_string("potential.kind = bump\npotential.height = 0.2\n"));
    CHECK(bump.eval(0.3, 0) != bump.eval(0.7, 0));  // asymmetric by construction

    const auto tilted = kinlab::potential_from_settings(
        Settings::from_string("potential.kind = tilted\npotential.skew = 0.5\n"));
    CHECK(tilted.eval(1.0, 2) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        kinlab::potential_from_settings(Settings::from_string("potential.kind = sextic")),
        std::invalid_argument);
}

TEST_CASE("bar from settings") {
    const kinlab::Bar1D bar = kinlab::bar_from_settings(Settings::from_string(
        "bar.length = 2\nbar.interface = 0.8\nbar.modulus = 3\nbar.eps_bar = 0.25\n"
        "bar.u0 = -0.1\nbar.uL = 0.3\nbar.body_force = linear 1 2\n"));
    CHECK(bar.length == 2.0);
    CHECK(bar.interface == 0.8);
    CHECK(bar.modulus == 3.0);
    CHECK(bar.eps_bar == 0.25);
    CHECK(bar.u0 == -0.1);
    CHECK(bar.uL == 0.3);
    CHECK(bar.body_force_left.eval(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(bar.body_force_right.eval(0.5) == doctest::Approx(2.0).epsilon(1e-15));

    const kinlab::Bar1D con = kinlab::bar_from_settings(
        Settings::from_string("bar.body_force = constant 0.25"));
    CHECK(con.body_force_left.eval(0.9) == doctest::Approx(0.25).epsilon(1e-15));
    const kinlab::Bar1D zero = kinlab::bar_from_settings(
        Settings::from_string("bar.body_force = zero"));
    CHECK(zero.body_force_right.eval(0.4) == 0.0);

    CHECK_THROWS_AS(
        kinlab::bar_from_settings(Settings::from_string("bar.body_force = constant")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        kinlab::bar_from_settings(Settings::from_string("bar.body_force = linear 1")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        kinlab::bar_from_settings(Settings::from_string("bar.body_force = ramp 1")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        kinlab::bar_from_settings(Settings::from_string("bar.body_force = zero 7")),
        std::invalid_argument);
}

TEST_CASE("simulation config from settings") {
    const kinlab::SimConfig cfg = kinlab::sim_from_settings(Settings::from_string(
        "sim.geometry = radial2d\nmodel.mu = 0.005\nmodel.lambda = 0.09\n"
        "model.mobility = 1.5\nsim.initial_radius = 0.3\nsim.domain = 2\n"
        "sim.grid_points = 1201\nsim.dt = 1e-4\nsim.t_end = 0.5\n"
        "sim.output_every = 0.05\nsim.profile_points = 1501\n"));
    CHECK(cfg.geometry == kinlab::Geometry::radial2d);
    CHECK(cfg.mu == 0.005);
    CHECK(cfg.lambda == 0.09);
    CHECK(cfg.mobility == 1.5);
    CHECK(cfg.initial_radius == 0.3);
    CHECK(cfg.domain_length == 2.0);
    CHECK(cfg.grid_points == 1201);
    CHECK(cfg.dt == 1e-4);
    CHECK(cfg.t_end == 0.5);
    CHECK(cfg.output_every == 0.05);
    CHECK(cfg.profile_points == 1501);

    const kinlab::SimConfig planar = kinlab::sim_from_settings(Settings());
    CHECK(planar.geometry == kinlab::Geometry::planar1d);
    CHECK(planar.mu == 0.01);

    CHECK_THROWS_AS(
        kinlab::sim_from_settings(Settings::from_string("sim.geometry = cubic")),
        std::invalid_argument);
}

}  // TEST_SUITE
