#ifndef KINLAB_HARNESS_HPP
#define KINLAB_HARNESS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kinlab/simulator.hpp"

namespace kinlab {

enum class ExperimentKind { speed, residuals, width, radial };

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

// Parameter sweep over a (mu, lambda) product grid with a shared physical
// configuration; each grid point runs one experiment of the chosen kind.
struct SweepSpec {
    ExperimentKind kind = ExperimentKind::speed;
    std::vector<double> mus;
    std::vector<double> lambdas;
    SimConfig base;        // mu/lambda fields are overwritten per grid point
    std::string out_dir;   // when non-empty, run_sweep writes <kind>.csv here

    // Non-empty parameter lists inside the admissible ranges, and the layer
    // plus matching zone fits strictly inside the geometry for every point.
    void validate() const;
};

// Least-squares line in log-log coordinates with the per-point table.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square in log coordinates
    std::vector<std::array<double, 2>> points;  // (log x, log y)
};

// Requires >= 4 strictly positive samples.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
    double mu = 0.0, lambda = 0.0;
    bool ok = false;
    std::string error;            // failure note; the sweep continues
    std::vector<double> values;   // aligned with SweepReport::columns
};

struct SweepReport {
    ExperimentKind kind = ExperimentKind::speed;
    std::vector<std::string> columns;      // value columns after mu, lambda, ok
    std::vector<SweepRow> rows;            // sorted by (mu, lambda)
    std::map<std::string, FitResult> fits; // log-log slopes, keyed by name
    bool certificates_ok = true;           // all per-point grid certificates
};

// Runs the experiment on every (mu, lambda) pair, distributing points over
// `jobs` worker threads (<= 0 picks the hardware concurrency). Rows are
// sorted before any output, so identical specs give byte-identical CSVs.
SweepReport run_sweep(const SweepSpec& spec, int jobs = 1);

// Resolution and error budget implied by a target propagation-speed error.
struct EffortReport {
    double target_error = 0.0, curvature_norm = 0.0, s10_norm = 0.0;
    double mobility = 0.0, exponent = 0.0;
    bool degenerate = false;  // vanishing first-order speed coefficient
    double E = 0.0;      // elastic-scale parameter bound
    double F = 0.0;      // phase-field-scale parameter bound
    double B = 0.0;      // interface width bound, B = E * F
    double e_num = 0.0;  // numerical effort lower bound, B^(-exponent)
};

EffortReport effort_report(double target_error, double curvature_norm,
                           double s10_norm, double c, double p);

// Deterministic CSV writing: %.12g cells, '\n' line ends.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace kinlab

#endif  // KINLAB_HARNESS_HPP
