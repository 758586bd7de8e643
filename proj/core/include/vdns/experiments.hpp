#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vdns/scheme.hpp"

namespace vdns {

enum class ExperimentKind { ConvergeSpace, ConvergeTime, Energy };

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::ConvergeSpace;
    std::string case_name = "ex41";
    double mu = 1.0;
    std::vector<double> h_schedule;    // decreasing; converge-time uses only the first entry
    std::vector<double> tau_schedule;  // decreasing
    double final_time = 0.0;           // 0 = kind default
    int quadrature_degree = 6;
    bool slow = false;  // enables the heavy reference resolutions
    std::filesystem::path out_dir = "out";
    int vtk_every = 0;  // snapshot interval in steps, 0 = off

    /// Fills empty schedules / times with the kind defaults and validates
    /// (schedules nonempty and strictly decreasing).
    void apply_defaults();
};

struct ConvergenceRow {
    double h = 0.0;
    double tau = 0.0;
    double error_rho = 0.0;
    double error_u = 0.0;
    std::optional<double> order_rho;  // empty on the first row
    std::optional<double> order_u;
    bool past_floor = false;  // temporal study: refinement no longer resolved in time
    bool failed = false;
    std::string failure;
};

struct EnergySample {
    int n = 0;
    double t = 0.0;
    double energy = 0.0;
};

struct EnergyStudyResult {
    std::vector<EnergySample> series;  // n = 1..N, starting at the first two-level state
    int first_violation = -1;          // index of the first dissipation violation, -1 if none
    double tolerance = 0.0;            // 1e-12 * E^1 used for the check
};

/// log2(e_coarse / e_fine) / log2(s_coarse / s_fine); exact 2.0 for
/// quarter-error halvings.
double experimental_order(double e_coarse, double e_fine, double s_coarse, double s_fine);

/// Spatial study: one simulation per h with tau = h (case ex41, T = 0.5 by
/// default), errors of rho = sigma_h^2 and u at the final time. Per-run
/// failures are recorded in the row and the experiment continues.
std::vector<ConvergenceRow> run_converge_space(const ExperimentSpec& spec);

/// Temporal study: fixed h (first schedule entry), one simulation per tau
/// (case ex42, T = 1 by default). Rows past the spatial error floor (order
/// drop below 1.5) are flagged.
std::vector<ConvergenceRow> run_converge_time(const ExperimentSpec& spec);

/// Free-decay energy series from the case's initial data (forcing off,
/// homogeneous traces) with the per-step dissipation check
/// E^{n+1} <= E^n + 1e-12 E^1.
EnergyStudyResult run_energy_study(const ExperimentSpec& spec);

/// CSV and manifest emission. Tables print 6 significant digits, raw energy
/// series 17; reruns with an identical spec produce byte-identical files.
void write_outputs(const std::vector<ConvergenceRow>& rows, const ExperimentSpec& spec);
void write_outputs(const EnergyStudyResult& result, const ExperimentSpec& spec);

/// One named pass/fail verdict of an experiment.
struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Verdicts for the spatial study: per-refinement orders within [1.7, 2.3]
/// and error magnitudes within a factor 3 of the reference values at the
/// standard resolutions.
std::vector<CheckLine> assess_converge_space(const std::vector<ConvergenceRow>& rows);
/// Verdicts for the temporal study: u-orders within [1.7, 2.3] above the
/// floor; with `slow`, first-row magnitude against the reference value.
std::vector<CheckLine> assess_converge_time(const std::vector<ConvergenceRow>& rows, bool slow);
std::vector<CheckLine> assess_energy(const EnergyStudyResult& result);

}  // namespace vdns
