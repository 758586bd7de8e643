#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "vdns/linear_system.hpp"
#include "vdns/operators.hpp"

using namespace vdns;

namespace {

SparseMatrix dense_to_sparse(const Eigen::MatrixXd& d) {
    std::vector<Triplet> t;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (d(i, j) != 0.0) t.emplace_back(i, j, d(i, j));
    return matrix_from_triplets(static_cast<int>(d.rows()), static_cast<int>(d.cols()), t);
}

}  // namespace

TEST_CASE("identity solve returns the rhs") {
    const int n = 7;
    LinearSystem sys{dense_to_sparse(Eigen::MatrixXd::Identity(n, n)),
                     Eigen::VectorXd::LinSpaced(n, -2.0, 4.0)};
    const Eigen::VectorXd x = solve_direct(sys);
    CHECK((x - sys.rhs).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("2x2 hand-eliminated system") {
    Eigen::MatrixXd a(2, 2);
    a << 2, 1, 1, 3;
    LinearSystem sys{dense_to_sparse(a), (Eigen::VectorXd(2) << 3, 5).finished()};
    double residual = -1.0;
    const Eigen::VectorXd x = solve_direct(sys, &residual);
    CHECK(x[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(residual <= 1e-10);
}

TEST_CASE("singular matrix raises a factorization error") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 1;
    LinearSystem sys{dense_to_sparse(a), Eigen::VectorXd::Ones(2)};
    CHECK_THROWS_AS(solve_direct(sys), FactorizationError);
}

TEST_CASE("dirichlet: full constraint set gives the prescribed vector") {
    Eigen::MatrixXd a(3, 3);
    a << 4, 1, 0, 1, 4, 1, 0, 1, 4;
    LinearSystem sys{dense_to_sparse(a), Eigen::VectorXd::Ones(3)};
    const int dofs[] = {0, 1, 2};
    const double vals[] = {0.0, 0.0, 0.0};
    apply_dirichlet(sys, dofs, vals);
    CHECK(solve_direct(sys).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("dirichlet: 1x1 constrained solve attains the value exactly") {
    LinearSystem sys{dense_to_sparse(Eigen::MatrixXd::Constant(1, 1, 2.0)),
                     (Eigen::VectorXd(1) << 4).finished()};
    const int dofs[] = {0};
    const double vals[] = {7.0};
    apply_dirichlet(sys, dofs, vals);
    CHECK(solve_direct(sys)[0] == 7.0);
}

TEST_CASE("dirichlet preserves symmetry and rejects bad indices") {
    Eigen::MatrixXd a(3, 3);
    a << 4, 1, 2, 1, 5, 1, 2, 1, 6;
    LinearSystem sys{dense_to_sparse(a), Eigen::VectorXd::Ones(3)};
    const int dofs[] = {1};
    const double vals[] = {2.5};
    apply_dirichlet(sys, dofs, vals);
    const Eigen::MatrixXd d = Eigen::MatrixXd(sys.matrix);
    CHECK((d - d.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    const Eigen::VectorXd x = solve_direct(sys);
    CHECK(x[1] == 2.5);

    const int bad[] = {17};
    CHECK_THROWS_AS(apply_dirichlet(sys, bad, vals), std::out_of_range);
}

TEST_CASE("poisson with harmonic boundary data x^2 - y^2: P1 MMS, EOC 2") {
    // -lap(u) = 0, u = x^2 - y^2 on the boundary; exact solution is harmonic.
    const ScalarFn exact = [](double x, double y, double) { return x * x - y * y; };
    const QuadratureRule rule = triangle_quadrature(6);
    std::vector<double> errors;
    for (int n : {4, 8, 16}) {
        const Mesh m = build_unit_square_mesh(n);
        const FunctionSpace s = build_space(m, SpaceKind::P1Scalar);
        SparseMatrix k = assemble_form(
            s, s,
            [](const QuadPoint& qp, Eigen::MatrixXd& local) {
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        local(i, j) += qp.w * qp.test_grad[i].dot(qp.trial_grad[j]);
            },
            rule);
        LinearSystem sys{std::move(k), Eigen::VectorXd::Zero(s.dof_count)};
        std::vector<int> bdofs(s.boundary_dofs.begin(), s.boundary_dofs.end());
        std::vector<double> bvals;
        for (int d : bdofs) {
            const Vec2& x = s.node_coordinates[d];
            bvals.push_back(exact(x.x(), x.y(), 0.0));
        }
        apply_dirichlet(sys, bdofs, bvals);
        const Field u(s, solve_direct(sys));
        errors.push_back(l2_error(u, exact, 0.0, rule));
    }
    CHECK(std::log2(errors[0] / errors[1]) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::log2(errors[1] / errors[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("determinism: identical inputs give bit-identical solutions") {
    const Mesh m = build_unit_square_mesh(6);
    const FunctionSpace s = build_space(m, SpaceKind::P2Scalar);
    const QuadratureRule rule = triangle_quadrature(6);
    SparseMatrix mass = assemble_form(
        s, s,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local(i, j) += qp.w * qp.test[i] * qp.trial[j];
        },
        rule);
    Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(s.dof_count, -1.0, 1.0);
    const Eigen::VectorXd x1 = solve_direct({mass, rhs});
    const Eigen::VectorXd x2 = solve_direct({mass, rhs});
    for (int i = 0; i < x1.size(); ++i) CHECK(x1[i] == x2[i]);
}

TEST_CASE("matrix market dump") {
    Eigen::MatrixXd a(2, 2);
    a << 1.5, 0, 0, -2.25;
    const auto path = std::filesystem::temp_directory_path() / "vdns_test_mm.mtx";
    write_matrix_market(dense_to_sparse(a), path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "%%MatrixMarket matrix coordinate real general");
    int rows, cols, nnz;
    in >> rows >> cols >> nnz;
    CHECK(rows == 2);
    CHECK(nnz == 2);
    std::filesystem::remove(path);
}
