#include "vdns/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vdns/operators.hpp"
#include "vdns/version.hpp"
#include "vdns/vtk_io.hpp"

namespace vdns {

namespace {

constexpr double kOrderLow = 1.7, kOrderHigh = 2.3;
constexpr double kMagnitudeFactor = 3.0;
constexpr double kFloorOrder = 1.5;

struct Anchor {
    double step, rho, u;
};
// Reference error magnitudes at the standard resolutions (spatial: tau = h,
// T = 0.5; temporal: h = 1/256, T = 1).
constexpr Anchor kSpaceAnchors[] = {{1.0 / 8, 8.10e-3, 2.49e-5},
                                    {1.0 / 16, 1.98e-3, 5.72e-6},
                                    {1.0 / 32, 4.85e-4, 1.40e-6},
                                    {1.0 / 64, 1.20e-4, 3.49e-7}};
constexpr Anchor kTimeAnchors[] = {{0.1, 4.72e-3, 7.48e-6},
                                   {0.05, 1.09e-3, 1.95e-6},
                                   {0.025, 2.62e-4, 5.01e-7},
                                   {0.0125, 6.40e-5, 1.27e-7},
                                   {0.00625, 1.58e-5, 3.21e-8}};

AnalyticCase make_case(const std::string& name, double mu) {
    if (name == "ex41") return case_ex41(mu);
    if (name == "ex42") return case_ex42(mu);
    throw std::invalid_argument("unknown case '" + name + "' (available: ex41, ex42)");
}

int mesh_n_from_h(double h) {
    const auto n = std::llround(1.0 / h);
    if (n < 1 || std::abs(1.0 / h - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument("schedule h must be the reciprocal of an integer");
    return static_cast<int>(n);
}

void require_decreasing(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string(what) + " schedule is empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]))
            throw std::invalid_argument(std::string(what) + " schedule must be decreasing");
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void maybe_write_snapshot(const ExperimentSpec& spec, const Bdf2Scheme& scheme,
                          const std::string& label, const StepReport& rep,
                          const TimeState& state) {
    if (spec.vtk_every <= 0 || rep.step_index % spec.vtk_every != 0) return;
    char name[128];
    std::snprintf(name, sizeof name, "%s_step%06d.vtk", label.c_str(), rep.step_index);
    write_fields_vtk(spec.out_dir / name, scheme.mesh(),
                     {{"sigma", &state.sigma_curr}, {"u", &state.u_curr}, {"p", &state.p_curr}});
}

}  // namespace

void ExperimentSpec::apply_defaults() {
    switch (kind) {
        case ExperimentKind::ConvergeSpace:
            if (case_name.empty()) case_name = "ex41";
            if (h_schedule.empty()) {
                h_schedule = {1.0 / 8, 1.0 / 16, 1.0 / 32};
                if (slow) h_schedule.push_back(1.0 / 64);
            }
            if (final_time == 0.0) final_time = 0.5;
            break;
        case ExperimentKind::ConvergeTime:
            if (case_name.empty()) case_name = "ex42";
            if (h_schedule.empty()) h_schedule = {slow ? 1.0 / 256 : 1.0 / 64};
            if (tau_schedule.empty()) tau_schedule = {0.1, 0.05, 0.025, 0.0125};
            if (final_time == 0.0) final_time = 1.0;
            break;
        case ExperimentKind::Energy:
            if (case_name.empty()) case_name = "ex41";
            if (h_schedule.empty()) h_schedule = {1.0 / 16};
            if (tau_schedule.empty()) tau_schedule = {0.1};
            if (final_time == 0.0) final_time = 10.0;
            break;
    }
    require_decreasing(h_schedule, "h");
    if (kind != ExperimentKind::ConvergeSpace) require_decreasing(tau_schedule, "tau");
}

double experimental_order(double e_coarse, double e_fine, double s_coarse, double s_fine) {
    return std::log2(e_coarse / e_fine) / std::log2(s_coarse / s_fine);
}

std::vector<ConvergenceRow> run_converge_space(const ExperimentSpec& spec) {
    ExperimentSpec s = spec;
    s.apply_defaults();
    const AnalyticCase c = make_case(s.case_name, s.mu);

    std::vector<ConvergenceRow> rows;
    for (double h : s.h_schedule) {
        ConvergenceRow row;
        row.h = h;
        row.tau = h;
        try {
            SchemeConfig cfg;
            cfg.tau = h;
            cfg.final_time = s.final_time;
            cfg.mu = s.mu;
            cfg.mesh_n = mesh_n_from_h(h);
            cfg.quadrature_degree = s.quadrature_degree;
            Bdf2Scheme scheme(cfg);
            char label[64];
            std::snprintf(label, sizeof label, "%s_space_n%d", s.case_name.c_str(), cfg.mesh_n);
            RunResult run = scheme.run_simulation(
                c, [&](const StepReport& rep, const TimeState& st) {
                    maybe_write_snapshot(s, scheme, label, rep, st);
                });
            const double T = s.final_time;
            row.error_rho = scheme.rho_error(run.final_state.sigma_curr, c.sigma, T);
            row.error_u = l2_error(run.final_state.u_curr, c.u, T, scheme.quadrature());
        } catch (const std::exception& e) {
            row.failed = true;
            row.failure = e.what();
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].failed || rows[i - 1].failed) continue;
        rows[i].order_rho = experimental_order(rows[i - 1].error_rho, rows[i].error_rho,
                                               rows[i - 1].h, rows[i].h);
        rows[i].order_u =
            experimental_order(rows[i - 1].error_u, rows[i].error_u, rows[i - 1].h, rows[i].h);
    }
    return rows;
}

std::vector<ConvergenceRow> run_converge_time(const ExperimentSpec& spec) {
    ExperimentSpec s = spec;
    s.apply_defaults();
    const AnalyticCase c = make_case(s.case_name, s.mu);
    const double h = s.h_schedule.front();

    std::vector<ConvergenceRow> rows;
    for (double tau : s.tau_schedule) {
        ConvergenceRow row;
        row.h = h;
        row.tau = tau;
        try {
            SchemeConfig cfg;
            cfg.tau = tau;
            cfg.final_time = s.final_time;
            cfg.mu = s.mu;
            cfg.mesh_n = mesh_n_from_h(h);
            cfg.quadrature_degree = s.quadrature_degree;
            Bdf2Scheme scheme(cfg);
            char label[64];
            std::snprintf(label, sizeof label, "%s_time_tau%g", s.case_name.c_str(), tau);
            RunResult run = scheme.run_simulation(
                c, [&](const StepReport& rep, const TimeState& st) {
                    maybe_write_snapshot(s, scheme, label, rep, st);
                });
            const double T = s.final_time;
            row.error_rho = scheme.rho_error(run.final_state.sigma_curr, c.sigma, T);
            row.error_u = l2_error(run.final_state.u_curr, c.u, T, scheme.quadrature());
        } catch (const std::exception& e) {
            row.failed = true;
            row.failure = e.what();
        }
        rows.push_back(std::move(row));
    }
    bool floored = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].failed || rows[i - 1].failed) continue;
        rows[i].order_rho = experimental_order(rows[i - 1].error_rho, rows[i].error_rho,
                                               rows[i - 1].tau, rows[i].tau);
        rows[i].order_u =
            experimental_order(rows[i - 1].error_u, rows[i].error_u, rows[i - 1].tau, rows[i].tau);
        if (!floored && *rows[i].order_u < kFloorOrder) floored = true;
        rows[i].past_floor = floored;
    }
    return rows;
}

EnergyStudyResult run_energy_study(const ExperimentSpec& spec) {
    ExperimentSpec s = spec;
    s.kind = ExperimentKind::Energy;
    s.apply_defaults();
    const AnalyticCase c = make_case(s.case_name, s.mu);

    SchemeConfig cfg;
    cfg.tau = s.tau_schedule.front();
    cfg.final_time = s.final_time;
    cfg.mu = s.mu;
    cfg.mesh_n = mesh_n_from_h(s.h_schedule.front());
    cfg.quadrature_degree = s.quadrature_degree;
    cfg.forcing_enabled = false;
    Bdf2Scheme scheme(cfg);

    const Field sigma0 = interpolate_lagrange(c.sigma, scheme.sigma_space(), 0.0);
    const Field u0 = interpolate_lagrange(c.u, scheme.velocity_space(), 0.0);
    char label[64];
    std::snprintf(label, sizeof label, "%s_energy", s.case_name.c_str());
    RunResult run = scheme.run_free_decay(sigma0, u0,
                                          [&](const StepReport& rep, const TimeState& st) {
                                              maybe_write_snapshot(s, scheme, label, rep, st);
                                          });

    EnergyStudyResult result;
    for (const StepReport& rep : run.reports)
        result.series.push_back({rep.step_index, rep.time, rep.energy});
    result.tolerance = 1e-12 * result.series.front().energy;
    for (std::size_t k = 1; k < result.series.size(); ++k) {
        if (result.series[k].energy > result.series[k - 1].energy + result.tolerance) {
            result.first_violation = static_cast<int>(k);
            break;
        }
    }
    return result;
}

namespace {

void write_manifest(const ExperimentSpec& spec) {
    std::FILE* f = std::fopen((spec.out_dir / "run_manifest.json").string().c_str(), "w");
    if (!f) throw std::runtime_error("write_outputs: cannot open manifest file");
    const char* kind = spec.kind == ExperimentKind::ConvergeSpace  ? "converge-space"
                       : spec.kind == ExperimentKind::ConvergeTime ? "converge-time"
                                                                   : "energy";
    std::fprintf(f, "{\n");
    std::fprintf(f, "  \"experiment\": \"%s\",\n", kind);
    std::fprintf(f, "  \"case\": \"%s\",\n", spec.case_name.c_str());
    std::fprintf(f, "  \"mu\": %.17g,\n", spec.mu);
    std::fprintf(f, "  \"final_time\": %.17g,\n", spec.final_time);
    std::fprintf(f, "  \"quadrature_degree\": %d,\n", spec.quadrature_degree);
    std::fprintf(f, "  \"slow\": %s,\n", spec.slow ? "true" : "false");
    std::fprintf(f, "  \"h_schedule\": [");
    for (std::size_t i = 0; i < spec.h_schedule.size(); ++i)
        std::fprintf(f, "%s%.17g", i ? ", " : "", spec.h_schedule[i]);
    std::fprintf(f, "],\n  \"tau_schedule\": [");
    for (std::size_t i = 0; i < spec.tau_schedule.size(); ++i)
        std::fprintf(f, "%s%.17g", i ? ", " : "", spec.tau_schedule[i]);
    std::fprintf(f, "],\n  \"version\": \"%s\"\n}\n", version());
    std::fclose(f);
}

}  // namespace

void write_outputs(const std::vector<ConvergenceRow>& rows, const ExperimentSpec& spec) {
    ExperimentSpec s = spec;
    s.apply_defaults();
    std::filesystem::create_directories(s.out_dir);
    const bool spatial = s.kind == ExperimentKind::ConvergeSpace;
    const auto path = s.out_dir / (spatial ? "converge_space.csv" : "converge_time.csv");
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_outputs: cannot open " + path.string());
    std::fprintf(f, "%s,err_rho,order_rho,err_u,order_u%s\n", spatial ? "h" : "tau",
                 spatial ? "" : ",past_floor");
    for (const auto& r : rows) {
        std::fprintf(f, "%s,%s,%s,%s,%s", format_sig(spatial ? r.h : r.tau, 6).c_str(),
                     format_sig(r.error_rho, 6).c_str(),
                     r.order_rho ? format_sig(*r.order_rho, 6).c_str() : "",
                     format_sig(r.error_u, 6).c_str(),
                     r.order_u ? format_sig(*r.order_u, 6).c_str() : "");
        if (!spatial) std::fprintf(f, ",%d", r.past_floor ? 1 : 0);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
    write_manifest(s);
}

void write_outputs(const EnergyStudyResult& result, const ExperimentSpec& spec) {
    ExperimentSpec s = spec;
    s.kind = ExperimentKind::Energy;
    s.apply_defaults();
    std::filesystem::create_directories(s.out_dir);
    const auto path = s.out_dir / "energy.csv";
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_outputs: cannot open " + path.string());
    std::fprintf(f, "n,t,E\n");
    for (const auto& sample : result.series)
        std::fprintf(f, "%d,%.17g,%.17g\n", sample.n, sample.t, sample.energy);
    std::fclose(f);
    write_manifest(s);
}

std::vector<CheckLine> assess_converge_space(const std::vector<ConvergenceRow>& rows) {
    std::vector<CheckLine> checks;
    for (const auto& r : rows) {
        if (r.failed) {
            checks.push_back({"run h=" + format_sig(r.h, 6), false, r.failure});
            continue;
        }
        for (const Anchor& a : kSpaceAnchors) {
            if (std::abs(a.step - r.h) > 1e-12 * a.step) continue;
            const bool rho_ok =
                r.error_rho <= kMagnitudeFactor * a.rho && r.error_rho >= a.rho / kMagnitudeFactor;
            const bool u_ok =
                r.error_u <= kMagnitudeFactor * a.u && r.error_u >= a.u / kMagnitudeFactor;
            checks.push_back({"rho error magnitude at h=" + format_sig(r.h, 6), rho_ok,
                              format_sig(r.error_rho, 6) + " vs reference " + format_sig(a.rho, 6)});
            checks.push_back({"u error magnitude at h=" + format_sig(r.h, 6), u_ok,
                              format_sig(r.error_u, 6) + " vs reference " + format_sig(a.u, 6)});
        }
        if (r.order_rho) {
            const bool ok = *r.order_rho >= kOrderLow && *r.order_rho <= kOrderHigh;
            checks.push_back({"rho order at h=" + format_sig(r.h, 6), ok,
                              format_sig(*r.order_rho, 6) + " in [1.7, 2.3]"});
        }
        if (r.order_u) {
            const bool ok = *r.order_u >= kOrderLow && *r.order_u <= kOrderHigh;
            checks.push_back({"u order at h=" + format_sig(r.h, 6), ok,
                              format_sig(*r.order_u, 6) + " in [1.7, 2.3]"});
        }
    }
    return checks;
}

std::vector<CheckLine> assess_converge_time(const std::vector<ConvergenceRow>& rows, bool slow) {
    std::vector<CheckLine> checks;
    int resolved_halvings = 0;
    for (const auto& r : rows) {
        if (r.failed) {
            checks.push_back({"run tau=" + format_sig(r.tau, 6), false, r.failure});
            continue;
        }
        if (r.order_u && !r.past_floor) {
            ++resolved_halvings;
            const bool ok = *r.order_u >= kOrderLow && *r.order_u <= kOrderHigh;
            checks.push_back({"u order at tau=" + format_sig(r.tau, 6), ok,
                              format_sig(*r.order_u, 6) + " in [1.7, 2.3]"});
        }
    }
    checks.push_back({"at least one resolved halving", resolved_halvings > 0,
                      std::to_string(resolved_halvings) + " halvings above the floor"});
    if (slow && !rows.empty() && !rows.front().failed) {
        const Anchor& a = kTimeAnchors[0];
        if (std::abs(rows.front().tau - a.step) < 1e-12) {
            const bool ok = rows.front().error_u <= kMagnitudeFactor * a.u &&
                            rows.front().error_u >= a.u / kMagnitudeFactor;
            checks.push_back({"u error magnitude at tau=0.1 (reference resolution)", ok,
                              format_sig(rows.front().error_u, 6) + " vs reference " +
                                  format_sig(a.u, 6)});
        }
    }
    return checks;
}

std::vector<CheckLine> assess_energy(const EnergyStudyResult& result) {
    std::vector<CheckLine> checks;
    checks.push_back({"energy series nonempty", !result.series.empty(),
                      std::to_string(result.series.size()) + " levels"});
    if (result.first_violation < 0) {
        checks.push_back({"energy nonincreasing at every step", true,
                          "tolerance " + format_sig(result.tolerance, 6)});
    } else {
        const auto& s = result.series[result.first_violation];
        checks.push_back({"energy nonincreasing at every step", false,
                          "first violation at n=" + std::to_string(s.n)});
    }
    return checks;
}

}  // namespace vdns
