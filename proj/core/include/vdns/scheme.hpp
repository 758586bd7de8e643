#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vdns/analytic_case.hpp"
#include "vdns/assembly.hpp"
#include "vdns/linear_system.hpp"
#include "vdns/mesh.hpp"

namespace vdns {

struct SchemeConfig {
    double tau = 0.1;
    double final_time = 1.0;
    double mu = 1.0;
    int mesh_n = 16;
    int quadrature_degree = 6;
    bool forcing_enabled = true;

    /// N = final_time / tau; throws unless the quotient is an integer to
    /// within 0.5 ulp and the other invariants hold (tau > 0, mu > 0,
    /// final_time >= 2 tau).
    int step_count() const;
    void validate() const;
};

/// Two-level history driving one BDF2 step: (sigma^n, sigma^{n-1}),
/// (u^n, u^{n-1}) and p^n, at t_n = step_index * tau.
struct TimeState {
    Field sigma_curr, sigma_prev;
    Field u_curr, u_prev;
    Field p_curr;
    int step_index = 0;
    double time = 0.0;
};

struct StepReport {
    int step_index = 0;
    double time = 0.0;
    double wall_seconds = 0.0;
    double residual_density = 0.0;
    double residual_momentum = 0.0;
    double energy = 0.0;
    double min_sigma = 0.0;
    double max_sigma = 0.0;
    double pressure_mean = 0.0;
    bool sigma_positivity_lost = false;
};

struct RunResult {
    TimeState final_state;
    std::vector<StepReport> reports;  // one per level n = 1..N, first is the starting step
};

/// The linearized, energy-dissipative BDF2 scheme in the sigma = sqrt(rho)
/// formulation on the unit square: P2 density, Taylor-Hood (P2/P1) velocity
/// and pressure, zero pressure mean via a scalar multiplier. The momentum
/// convection is assembled in skew form; the density convection uses the
/// divergence form, which is trace-consistent and coincides with the skew
/// form whenever the advection field vanishes on the boundary. Density is
/// never solved for directly; rho = sigma^2 is evaluated pointwise at
/// quadrature points.
class Bdf2Scheme {
public:
    explicit Bdf2Scheme(SchemeConfig cfg);

    const SchemeConfig& config() const { return cfg_; }
    const Mesh& mesh() const { return mesh_; }
    const FunctionSpace& sigma_space() const { return space_sigma_; }
    const FunctionSpace& velocity_space() const { return space_u_; }
    const FunctionSpace& pressure_space() const { return space_p_; }
    const QuadratureRule& quadrature() const { return rule_; }

    /// Starting procedure: sigma_h^0 and u_h^0 are Lagrange interpolants of
    /// the exact initial data; sigma_h^1 solves the backward-Euler transport
    /// with convection u_h^0, then (u_h^1, p_h^1) the first-order momentum
    /// system. Forcing terms at t_1 are included when enabled.
    TimeState initialize_first_step(const AnalyticCase& c, StepReport* report = nullptr) const;

    /// Same starting procedure from given coefficient fields (free decay:
    /// no forcing, homogeneous traces). Fields must live on this scheme's
    /// sigma/velocity spaces.
    TimeState initialize_from_fields(const Field& sigma0, const Field& u0,
                                     StepReport* report = nullptr) const;

    /// One transport solve for sigma^{n+1} (pure transport, no Dirichlet
    /// constraints). `c` supplies the forcing g; pass nullptr for free decay.
    Field density_step(const TimeState& state, const AnalyticCase* c,
                       double* residual = nullptr) const;

    /// One momentum solve for (u^{n+1}, p^{n+1}) given sigma^{n+1}.
    std::pair<Field, Field> momentum_step(const TimeState& state, const Field& sigma_next,
                                          const AnalyticCase* c, double* residual = nullptr,
                                          double* pressure_mean = nullptr) const;

    /// E^n: ||sigma^n||^2 + ||sigma^n u^n||^2 + ||2 sigma^n - sigma^{n-1}||^2
    /// + ||2 sigma^n u^n - sigma^{n-1} u^{n-1}||^2, all products formed
    /// pointwise at the scheme's quadrature points.
    double discrete_energy(const TimeState& state) const;

    using Observer = std::function<void(const StepReport&, const TimeState&)>;

    RunResult run_simulation(const AnalyticCase& c, const Observer& observer = {}) const;
    RunResult run_free_decay(const Field& sigma0, const Field& u0,
                             const Observer& observer = {}) const;

    // --- assembled systems, exposed for oracle comparisons ---

    /// Density system of the BDF2 step (matrix and rhs, no constraints).
    LinearSystem assemble_density_system(const TimeState& state, const AnalyticCase* c) const;
    /// Momentum saddle system of the BDF2 step before Dirichlet elimination.
    LinearSystem assemble_momentum_system(const TimeState& state, const Field& sigma_next,
                                          const AnalyticCase* c) const;
    /// Convection matrix of the density step, (u_hat . grad sigma, phi)
    /// + 1/2 ((div u_hat) sigma, phi); equals the skew form exactly when
    /// u_hat has zero boundary trace (integrands within quadrature degree).
    SparseMatrix assemble_density_convection(const Field& u_hat) const;
    /// rho-weighted skew convection block (scalar component) of the momentum step.
    SparseMatrix assemble_weighted_skew_convection(const Field& sigma, const Field& u_hat) const;

    // --- monitors ---
    std::pair<double, double> sigma_range(const Field& sigma) const;  // min/max at quad points
    double pressure_integral(const Field& p) const;                   // exact via m vector

    /// ||rho_exact(., t) - sigma_h^2||_{L2} with rho_h formed pointwise.
    double rho_error(const Field& sigma, const ScalarFn& sigma_exact, double t) const;

private:
    struct MomentumCoefficients {
        double mass_factor;        // 3/(2 tau) or 1/tau
        const Field* u_hat;        // convection extrapolant
        double bc_time;            // trace evaluation time
    };

    Field extrapolant(const TimeState& state) const;
    SparseMatrix weighted_scalar_mass(const Field& sigma) const;
    SparseMatrix expand_block_diag(const SparseMatrix& scalar_block) const;
    Eigen::VectorXd momentum_history_rhs(const Field& sigma_next, double a_curr,
                                         const Field& sigma_curr, const Field& u_curr,
                                         double a_prev, const Field& sigma_prev,
                                         const Field& u_prev) const;
    Eigen::VectorXd forcing_rhs_density(const AnalyticCase& c, double t) const;
    Eigen::VectorXd forcing_rhs_momentum(const AnalyticCase& c, double t) const;
    std::vector<double> boundary_values(const AnalyticCase* c, double t) const;
    LinearSystem momentum_saddle(const Field& sigma_next, const Field& u_hat, double mass_factor,
                                 Eigen::VectorXd rhs) const;
    std::pair<Field, Field> solve_momentum(LinearSystem system, const AnalyticCase* c,
                                           double bc_time, double* residual,
                                           double* pressure_mean) const;
    TimeState start_from(Field sigma0, Field u0, const AnalyticCase* c, StepReport* report) const;

    SchemeConfig cfg_;
    Mesh mesh_;
    FunctionSpace space_sigma_;  // P2 scalar
    FunctionSpace space_u_;      // P2 vector
    FunctionSpace space_p_;      // P1 scalar
    QuadratureRule rule_;
    SparseMatrix mass_sigma_;          // P2 scalar mass
    SparseMatrix stiffness_scalar_;    // P2 scalar stiffness
    SparseMatrix divergence_neg_;      // -(div u, q) block, pressure x velocity
    Eigen::VectorXd pressure_integrals_;
};

}  // namespace vdns
