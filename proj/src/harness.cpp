#include "kinlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kinlab/asymptotic.hpp"
#include "kinlab/profiles.hpp"

namespace kinlab {

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::speed: return "speed";
        case ExperimentKind::residuals: return "residuals";
        case ExperimentKind::width: return "width";
        case ExperimentKind::radial: return "radial";
    }
    return "speed";
}

ExperimentKind experiment_from_name(const std::string& name) {
    if (name == "speed") return ExperimentKind::speed;
    if (name == "residuals") return ExperimentKind::residuals;
    if (name == "width") return ExperimentKind::width;
    if (name == "radial") return ExperimentKind::radial;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

void SweepSpec::validate() const {
    if (mus.empty()) throw std::invalid_argument("sweep: empty mu list");
    if (lambdas.empty()) throw std::invalid_argument("sweep: empty lambda list");
    base.psi.validate();
    const bool radial = kind == ExperimentKind::radial;
    if (radial && base.geometry == Geometry::planar1d)
        throw std::invalid_argument("sweep: radial experiment needs a radial geometry");
    if (!radial && base.geometry != Geometry::planar1d)
        throw std::invalid_argument("sweep: planar experiment needs the planar geometry");
    const double a = decay_rate(base.psi);
    const double delta =
        radial ? std::min(base.initial_radius,
                          base.domain_length - base.initial_radius)
               : std::min(base.bar.interface, base.bar.length - base.bar.interface);
    for (double mu : mus) {
        if (!(mu > 0.0 && mu <= mu_max()))
            throw std::invalid_argument("sweep: mu outside (0, exp(-2)]");
        for (double lambda : lambdas) {
            if (!(lambda > 0.0 && lambda <= kLambdaMax))
                throw std::invalid_argument("sweep: lambda outside (0, 1]");
            const double guard =
                3.0 * std::sqrt(mu * lambda) * std::abs(std::log(mu)) / a;
            if (guard >= delta) {
                std::ostringstream msg;
                msg << "sweep: matching zone does not fit the geometry at mu=" << mu
                    << ", lambda=" << lambda;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
    if (x.size() < 4) throw std::invalid_argument("fit requires at least 4 points");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0))
            throw std::invalid_argument("fit requires strictly positive samples");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const LineFit lf = fit_line(lx, ly);
    FitResult out;
    out.slope = lf.slope;
    out.intercept = lf.intercept;
    out.residual = lf.residual;
    out.points.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.points[i] = {lx[i], ly[i]};
    return out;
}

namespace {

std::vector<std::string> columns_for(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::speed:
            return {"s_ac", "s_ac_refined", "position", "s0", "s10",
                    "s11", "s1", "gap0", "gap1", "certificate"};
        case ExperimentKind::residuals:
            return {"f1_inner", "f1_outer", "f2_inner", "f2_outer",
                    "f3", "f1_inner_per_log2", "f2_inner_per_log2",
                    "f1_l1_scaled", "f2_l1_scaled"};
        case ExperimentKind::width:
            return {"width", "width_over_B"};
        case ExperimentKind::radial:
            return {"max_law_dev", "final_radius"};
    }
    return {};
}

double level_position(const SimState& st, double level) {
    int count = 0;
    double pos = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < st.S.size(); ++i) {
        const double a = st.S[i] - level;
        if (a == 0.0) {
            ++count;
            pos = st.x[i];
            continue;
        }
        if (i + 1 < st.S.size()) {
            const double b = st.S[i + 1] - level;
            if (a * b < 0.0) {
                ++count;
                pos = st.x[i] + (st.x[i + 1] - st.x[i]) * (-a) / (b - a);
            }
        }
    }
    if (count != 1)
        throw std::runtime_error("level measurement: expected exactly one crossing");
    return pos;
}

std::vector<double> run_speed_point(const SimConfig& cfg) {
    const SpeedReport rep = measure_speed_vs_kinetics(cfg);
    return {rep.s_ac, rep.s_ac_refined, rep.measured_position, rep.s0, rep.s10,
            rep.s11, rep.s1, rep.gap0, rep.gap1, rep.certificate_ok ? 1.0 : 0.0};
}

std::vector<double> run_residual_point(const SimConfig& cfg) {
    const BarSolution hat = solve_hat(cfg.bar);
    const BarSolution check = solve_check(cfg.bar, hat, cfg.psi);
    const InterfaceData data = interface_data(cfg.bar, hat, check, cfg.psi, 0.0, 0.0);
    // the residual certificate needs a mu-dependent layer resolution; the
    // configured table size acts only as a lower bound here
    const int n_prof =
        std::max(cfg.profile_points, residual_profile_points(cfg.psi, cfg.mu));
    const ProfileSet prof = solve_profiles(cfg.psi, data, cfg.lambda, cfg.mobility, n_prof);
    const double speed = kinetic_relation(prof.coeffs, cfg.mu, cfg.lambda);
    const OuterExpansion outer = build_outer(cfg.bar, hat, check, cfg.psi, data, prof,
                                             cfg.lambda, cfg.mobility, speed);
    const CompositeField field(outer, cfg.psi, data, prof, cfg.mu, cfg.lambda);
    const ResidualNorms r =
        residuals(field, cfg.bar, cfg.psi, cfg.mu, cfg.lambda, cfg.mobility);
    const double lg = std::abs(std::log(cfg.mu));
    const double scale = lg * lg * lg * cfg.mu;
    // the sup norms over the layer-and-matching window carry an explicit
    // |ln mu|^2 factor (the linear-in-zeta carriers contribute zeta^2 terms
    // at the blend location zeta ~ |ln mu|); the per_log2 columns divide it
    // out so their exponent in mu is the bare 1/2
    return {r.f1_inner,
            r.f1_outer,
            r.f2_inner,
            r.f2_outer,
            r.f3,
            r.f1_inner / (lg * lg),
            r.f2_inner / (lg * lg),
            r.f1_l1 / scale,
            r.f2_l1 * std::sqrt(cfg.lambda) / scale};
}

std::vector<double> run_width_point(const SimConfig& cfg) {
    SimState st = init_traveling(cfg);
    run_until(st, cfg, cfg.t_end);
    const double w = level_position(st, 0.9) - level_position(st, 0.1);
    return {w, w / cfg.width()};
}

std::vector<double> run_radial_point(const SimConfig& cfg) {
    SimState st = init_radial(cfg);
    run_until(st, cfg, cfg.t_end);
    const double B = cfg.width();
    const double R0 = cfg.initial_radius;
    const double rate = 2.0 * (cfg.dimension() - 1) * cfg.mobility * std::sqrt(cfg.lambda);
    double max_dev = 0.0;
    double final_R = R0;
    for (std::size_t i = 0; i < st.time_history.size(); ++i) {
        const double R = st.position_history[i];
        if (std::isnan(R) || R < 5.0 * B) break;
        const double law = R0 * R0 - rate * st.time_history[i];
        max_dev = std::max(max_dev, std::abs(R * R - law) / (R0 * R0));
        final_R = R;
    }
    return {max_dev, final_R};
}

SweepRow run_point(const SweepSpec& spec, double mu, double lambda) {
    SweepRow row;
    row.mu = mu;
    row.lambda = lambda;
    SimConfig cfg = spec.base;
    cfg.mu = mu;
    cfg.lambda = lambda;
    try {
        switch (spec.kind) {
            case ExperimentKind::speed: row.values = run_speed_point(cfg); break;
            case ExperimentKind::residuals: row.values = run_residual_point(cfg); break;
            case ExperimentKind::width: row.values = run_width_point(cfg); break;
            case ExperimentKind::radial: row.values = run_radial_point(cfg); break;
        }
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.values.assign(columns_for(spec.kind).size(),
                          std::numeric_limits<double>::quiet_NaN());
    }
    return row;
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Collects (x=mu, y=column) over ok rows at fixed lambda and adds the fit
// when there are enough positive points; silently skips otherwise.
void add_mu_fit(SweepReport& rep, const std::string& column, double lambda,
                bool tag_lambda, const std::string& suffix = "",
                bool log3_weight = false) {
    const auto it = std::find(rep.columns.begin(), rep.columns.end(), column);
    if (it == rep.columns.end()) return;
    const std::size_t ci = static_cast<std::size_t>(it - rep.columns.begin());
    std::vector<double> xs, ys;
    for (const SweepRow& row : rep.rows) {
        if (!row.ok || row.lambda != lambda) continue;
        const double y = row.values[ci];
        double x = row.mu;
        if (log3_weight) {
            const double lg = std::abs(std::log(row.mu));
            x = row.mu * lg * lg * lg;
        }
        if (x > 0.0 && y > 0.0 && std::isfinite(y)) {
            xs.push_back(x);
            ys.push_back(y);
        }
    }
    if (xs.size() < 4) return;
    std::string key = column + "_vs_mu" + suffix;
    if (tag_lambda) key += "@lambda=" + format_g(lambda);
    rep.fits[key] = fit_loglog(xs, ys);
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, int jobs) {
    spec.validate();
    std::vector<double> mus = spec.mus, lambdas = spec.lambdas;
    std::sort(mus.begin(), mus.end());
    std::sort(lambdas.begin(), lambdas.end());

    std::vector<std::pair<double, double>> tasks;
    for (double mu : mus)
        for (double lambda : lambdas) tasks.emplace_back(mu, lambda);

    SweepReport rep;
    rep.kind = spec.kind;
    rep.columns = columns_for(spec.kind);
    rep.rows.resize(tasks.size());

    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            rep.rows[i] = run_point(spec, tasks[i].first, tasks[i].second);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }

    // aggregate certificates
    for (const SweepRow& row : rep.rows) {
        if (!row.ok) {
            rep.certificates_ok = false;
            continue;
        }
        if (spec.kind == ExperimentKind::speed) {
            const std::size_t ci = columns_for(spec.kind).size() - 1;
            if (row.values[ci] != 1.0) rep.certificates_ok = false;
        }
    }

    // log-log fits against mu at each lambda
    const bool tag = lambdas.size() > 1;
    for (double lambda : lambdas) {
        switch (spec.kind) {
            case ExperimentKind::speed:
                add_mu_fit(rep, "gap0", lambda, tag);
                add_mu_fit(rep, "gap1", lambda, tag);
                add_mu_fit(rep, "gap1", lambda, tag, "_log3", true);
                break;
            case ExperimentKind::residuals:
                add_mu_fit(rep, "f2_inner", lambda, tag);
                add_mu_fit(rep, "f2_inner_per_log2", lambda, tag);
                add_mu_fit(rep, "f1_inner_per_log2", lambda, tag);
                add_mu_fit(rep, "f1_outer", lambda, tag);
                add_mu_fit(rep, "f3", lambda, tag);
                break;
            case ExperimentKind::width:
                add_mu_fit(rep, "width", lambda, tag);
                break;
            case ExperimentKind::radial:
                break;
        }
    }
    if (spec.kind == ExperimentKind::width) {
        // pooled fit against the product mu*lambda (exact power 1/2 target);
        // usable even when per-direction lines have fewer than 4 points
        std::vector<double> xs, ys;
        const auto it = std::find(rep.columns.begin(), rep.columns.end(), "width");
        const std::size_t ci = static_cast<std::size_t>(it - rep.columns.begin());
        for (const SweepRow& row : rep.rows)
            if (row.ok && row.values[ci] > 0.0) {
                xs.push_back(row.mu * row.lambda);
                ys.push_back(row.values[ci]);
            }
        if (xs.size() >= 4) rep.fits["width_vs_mulambda"] = fit_loglog(xs, ys);
    }

    if (!spec.out_dir.empty()) {
        std::vector<std::string> header = {"mu", "lambda", "ok"};
        header.insert(header.end(), rep.columns.begin(), rep.columns.end());
        std::vector<std::vector<double>> rows;
        rows.reserve(rep.rows.size());
        for (const SweepRow& row : rep.rows) {
            std::vector<double> r = {row.mu, row.lambda, row.ok ? 1.0 : 0.0};
            r.insert(r.end(), row.values.begin(), row.values.end());
            rows.push_back(std::move(r));
        }
        write_csv(spec.out_dir + "/" + experiment_name(spec.kind) + ".csv", header, rows);
    }
    return rep;
}

EffortReport effort_report(double target_error, double curvature_norm, double s10_norm,
                           double c, double p) {
    if (!(target_error > 0.0)) throw std::invalid_argument("effort: target error must be positive");
    if (!(curvature_norm > 0.0))
        throw std::invalid_argument("effort: curvature norm must be positive");
    if (!(s10_norm >= 0.0)) throw std::invalid_argument("effort: negative coefficient norm");
    if (!(c > 0.0)) throw std::invalid_argument("effort: mobility must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("effort: exponent must be positive");

    EffortReport rep;
    rep.target_error = target_error;
    rep.curvature_norm = curvature_norm;
    rep.s10_norm = s10_norm;
    rep.mobility = c;
    rep.exponent = p;
    rep.E = target_error / (c * curvature_norm);
    if (s10_norm > 0.0) {
        rep.degenerate = false;
        rep.F = 2.0 * target_error / s10_norm;
    } else {
        rep.degenerate = true;
        rep.F = std::sqrt(target_error);
    }
    rep.B = rep.E * rep.F;
    rep.e_num = std::pow(rep.B, -p);
    return rep;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("csv row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_g(row[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

}  // namespace kinlab
