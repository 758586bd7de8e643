// Command-line driver for the variable-density Navier-Stokes solver.
//
// Subcommands:
//   converge-space   spatial convergence study (tau = h schedule)
//   converge-time    temporal convergence study (fixed h, tau schedule)
//   energy           free-decay discrete-energy series
//   check            manufactured-solution and operator self-checks
//
// All flags can also be given through a TOML config file (--config); command
// line values override the file. Exit code is 0 only if every assertion of
// the chosen experiment passes.

#include <cmath>
#include <cstdio>
#include <random>

#include <CLI11.hpp>

#include "vdns/experiments.hpp"
#include "vdns/operators.hpp"
#include "vdns/version.hpp"
#include "vdns/vtk_io.hpp"

namespace {

using namespace vdns;

int report_checks(const std::vector<CheckLine>& checks) {
    bool all_pass = true;
    for (const auto& c : checks) {
        std::printf("%s  %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}

void print_rows(const std::vector<ConvergenceRow>& rows, bool spatial) {
    std::printf("%10s %12s %9s %12s %9s\n", spatial ? "h" : "tau", "err_rho", "order", "err_u",
                "order");
    for (const auto& r : rows) {
        if (r.failed) {
            std::printf("%10.6g  run failed: %s\n", spatial ? r.h : r.tau, r.failure.c_str());
            continue;
        }
        std::printf("%10.6g %12.4e %9s %12.4e %9s%s\n", spatial ? r.h : r.tau, r.error_rho,
                    r.order_rho ? std::to_string(*r.order_rho).substr(0, 5).c_str() : "-",
                    r.error_u, r.order_u ? std::to_string(*r.order_u).substr(0, 5).c_str() : "-",
                    r.past_floor ? "  (past spatial floor)" : "");
    }
}

int run_check(const std::string& case_name, double mu, int samples) {
    std::vector<CheckLine> checks;
    auto add = [&](const std::string& name, bool pass, double value, double threshold) {
        char detail[64];
        std::snprintf(detail, sizeof detail, "%.3e vs %.1e", value, threshold);
        checks.push_back({name, pass, detail});
    };

    for (const std::string& name : {std::string("ex41"), std::string("ex42")}) {
        if (!case_name.empty() && case_name != name) continue;
        const AnalyticCase c = name == "ex41" ? case_ex41(mu) : case_ex42(mu);
        const ForcingCheckReport rep = forcing_residual_check(c, samples);
        add(name + " forcing residual", rep.max_forcing_residual <= 1e-12,
            rep.max_forcing_residual, 1e-12);
        add(name + " derivative cross-check", rep.max_derivative_residual <= 1e-7,
            rep.max_derivative_residual, 1e-7);
        add(name + " divergence-free", rep.max_divergence <= 1e-13, rep.max_divergence, 1e-13);
    }

    // Quadrature: complete monomial basis up to the exactness degree,
    // reference values a! b! / (a+b+2)!.
    {
        const QuadratureRule rule = triangle_quadrature(6);
        double worst = 0.0;
        for (int a = 0; a + 0 <= rule.exact_degree; ++a) {
            for (int b = 0; a + b <= rule.exact_degree; ++b) {
                double exact = 1.0;
                for (int k = 1; k <= a; ++k) exact *= k;
                for (int k = 1; k <= b; ++k) exact *= k;
                for (int k = 1; k <= a + b + 2; ++k) exact /= k;
                double got = 0.0;
                for (int q = 0; q < rule.size(); ++q)
                    got += 0.5 * rule.weights[q] * std::pow(rule.points[q][1], a) *
                           std::pow(rule.points[q][2], b);
                worst = std::max(worst, std::abs(got - exact) / exact);
            }
        }
        add("degree-6 quadrature monomial exactness", worst <= 1e-13, worst, 1e-13);
    }

    // P2 partition of unity / gradient sum at random barycentric points.
    {
        std::mt19937 gen(7);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            double a = dist(gen), b = dist(gen);
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            std::array<double, 3> bary{1.0 - a - b, a, b};
            double vals[6];
            Vec2 grads[6];
            eval_reference_basis(ElementKind::P2, bary, vals, grads);
            double vsum = -1.0;
            Vec2 gsum = Vec2::Zero();
            for (int i = 0; i < 6; ++i) {
                vsum += vals[i];
                gsum += grads[i];
            }
            worst = std::max({worst, std::abs(vsum), gsum.lpNorm<Eigen::Infinity>()});
        }
        add("P2 partition of unity and gradient sum", worst <= 1e-12, worst, 1e-12);
    }

    // L2 projection orthogonality on a coarse mesh.
    {
        const Mesh mesh = build_unit_square_mesh(8);
        const FunctionSpace space = build_space(mesh, SpaceKind::P2Scalar);
        const QuadratureRule rule = triangle_quadrature(6);
        const ScalarFn f = [](double x, double y, double) {
            return std::sin(M_PI * x) * std::sin(M_PI * y);
        };
        const Field pf = project_l2(f, space, 0.0, rule);
        // (f - P f, w) over all basis functions w, scaled by ||f||.
        Eigen::VectorXd moments = assemble_functional(
            space,
            [&](const QuadPoint& qp, Eigen::VectorXd& local) {
                const double v = f(qp.x.x(), qp.x.y(), 0.0);
                for (int i = 0; i < 6; ++i) local[i] += qp.w * v * qp.test[i];
            },
            rule);
        const SparseMatrix mass = assemble_form(
            space, space,
            [](const QuadPoint& qp, Eigen::MatrixXd& local) {
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j) local(i, j) += qp.w * qp.test[i] * qp.trial[j];
            },
            rule);
        const double fnorm = std::sqrt(integrate(
            mesh, rule, [&](const Vec2& x) { return f(x.x(), x.y(), 0.0) * f(x.x(), x.y(), 0.0); }));
        const double ortho =
            (moments - mass * pf.coefficients).lpNorm<Eigen::Infinity>() / fnorm;
        add("L2 projection orthogonality", ortho <= 1e-10, ortho, 1e-10);
    }

    // Mesh invariants on n = 8.
    {
        const Mesh mesh = build_unit_square_mesh(8);
        double area = 0.0;
        for (int t = 0; t < mesh.triangle_count(); ++t) area += mesh.triangle_area(t);
        add("mesh area sums to 1", std::abs(area - 1.0) <= 1e-14, std::abs(area - 1.0), 1e-14);
        const bool euler =
            mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count() == 1;
        checks.push_back({"mesh Euler relation V-E+F=1", euler, "n=8"});
    }

    return report_checks(checks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-density incompressible Navier-Stokes solver (BDF2, Taylor-Hood)"};
    app.set_help_flag("--help", "print help and exit");  // frees -h / --h
    app.set_version_flag("--version", vdns::version());
    app.set_config("--config", "", "TOML config file mirroring all flags");
    app.require_subcommand(1);

    ExperimentSpec spec;
    std::string case_name;
    double T = 0.0;

    auto add_common = [&](CLI::App* cmd, bool with_tau) {
        cmd->set_help_flag("--help", "print help and exit");
        cmd->add_option("--case", case_name, "manufactured case: ex41 or ex42");
        cmd->add_option("--mu", spec.mu, "viscosity")->check(CLI::PositiveNumber);
        cmd->add_option("--h", spec.h_schedule, "mesh size schedule (reciprocals of integers)");
        if (with_tau) cmd->add_option("--tau", spec.tau_schedule, "time step schedule");
        cmd->add_option("--T", T, "final time");
        cmd->add_option("--quad-degree", spec.quadrature_degree, "quadrature exactness degree")
            ->check(CLI::Range(1, 8));
        cmd->add_flag("--slow", spec.slow, "enable the heavy reference resolutions");
        cmd->add_option("--out", spec.out_dir, "output directory");
        cmd->add_option("--vtk-every", spec.vtk_every, "field snapshot interval in steps");
    };

    CLI::App* space_cmd = app.add_subcommand("converge-space", "spatial convergence (tau = h)");
    add_common(space_cmd, false);
    CLI::App* time_cmd = app.add_subcommand("converge-time", "temporal convergence (fixed h)");
    add_common(time_cmd, true);
    CLI::App* energy_cmd = app.add_subcommand("energy", "free-decay discrete energy series");
    add_common(energy_cmd, true);

    CLI::App* check_cmd = app.add_subcommand("check", "manufactured-solution self-checks");
    int samples = 100;
    double check_mu = 1.0;
    check_cmd->add_option("--case", case_name, "restrict to one case");
    check_cmd->add_option("--mu", check_mu, "viscosity")->check(CLI::PositiveNumber);
    check_cmd->add_option("--samples", samples, "sample points per case")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed()) return run_check(case_name, check_mu, samples);

        if (!case_name.empty()) spec.case_name = case_name;
        if (T > 0.0) spec.final_time = T;

        if (space_cmd->parsed()) {
            spec.kind = ExperimentKind::ConvergeSpace;
            if (case_name.empty()) spec.case_name = "ex41";
            auto rows = run_converge_space(spec);
            write_outputs(rows, spec);
            print_rows(rows, true);
            return report_checks(assess_converge_space(rows));
        }
        if (time_cmd->parsed()) {
            spec.kind = ExperimentKind::ConvergeTime;
            if (case_name.empty()) spec.case_name = "ex42";
            auto rows = run_converge_time(spec);
            write_outputs(rows, spec);
            print_rows(rows, false);
            return report_checks(assess_converge_time(rows, spec.slow));
        }
        if (energy_cmd->parsed()) {
            spec.kind = ExperimentKind::Energy;
            if (case_name.empty()) spec.case_name = "ex41";
            auto result = run_energy_study(spec);
            write_outputs(result, spec);
            std::printf("energy series: %zu levels, E1 = %.6g, EN = %.6g\n", result.series.size(),
                        result.series.front().energy, result.series.back().energy);
            return report_checks(assess_energy(result));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
