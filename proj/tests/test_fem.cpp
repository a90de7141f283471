#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include <Eigen/Dense>

#include "bdis/errors.hpp"
#include "bdis/fem.hpp"

using namespace bdis;

namespace {

const double kPi = 3.14159265358979323846;

/** Nodal interpolant of a smooth function. */
Eigen::VectorXd interpolate(const Mesh& mesh, const ScalarField& f) {
    Eigen::VectorXd v(mesh.num_nodes());
    for (int id = 0; id < mesh.num_nodes(); ++id)
        v(id) = f(mesh.node_x(id), mesh.node_y(id));
    return v;
}

/** Max-norm discretization error for -lap p = 2 pi^2 sin(pi x) sin(pi y),
 *  whose exact solution is sin(pi x) sin(pi y). */
double manufactured_error(int N) {
    Mesh mesh(N);
    auto one = [](double, double) { return 1.0; };
    auto source = [](double x, double y) {
        return 2.0 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    Assembled sys = assemble(mesh, one, source);
    SolveResult res = solve(mesh, sys, 1e-12);
    double err = 0.0;
    for (int id = 0; id < mesh.num_nodes(); ++id) {
        double exact = std::sin(kPi * mesh.node_x(id)) * std::sin(kPi * mesh.node_y(id));
        err = std::max(err, std::abs(res.field(id) - exact));
    }
    return err;
}

} // namespace

TEST_SUITE("fem") {

TEST_CASE("mesh geometry") {
    Mesh mesh(4);
    CHECK(mesh.h() == 0.25);
    CHECK(mesh.num_nodes() == 25);
    CHECK(mesh.num_interior() == 9);
    CHECK(mesh.tris.size() == 32);
    CHECK(mesh.is_boundary(mesh.node(0, 2)));
    CHECK(mesh.is_boundary(mesh.node(4, 4)));
    CHECK_FALSE(mesh.is_boundary(mesh.node(2, 2)));
    // Counterclockwise orientation: positive doubled area for every triangle.
    for (const auto& tri : mesh.tris) {
        double x0 = mesh.node_x(tri.v[0]), y0 = mesh.node_y(tri.v[0]);
        double x1 = mesh.node_x(tri.v[1]), y1 = mesh.node_y(tri.v[1]);
        double x2 = mesh.node_x(tri.v[2]), y2 = mesh.node_y(tri.v[2]);
        CHECK((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0) > 0.0);
    }
    CHECK_THROWS_AS(Mesh(1), std::invalid_argument);
}

TEST_CASE("single interior node closed forms") {
    // N = 2: one interior node; unit coefficient gives stiffness exactly [4],
    // and the benchmark load g = y2 integrates to 1/8 at that node.
    Mesh mesh(2);
    auto one = [](double, double) { return 1.0; };
    Assembled sys = assemble(mesh, one, [](double, double y) { return y; });
    REQUIRE(sys.A.rows() == 1);
    CHECK(sys.A.coeff(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sys.b(0) == doctest::Approx(0.125).epsilon(1e-14));
    SolveResult res = solve(mesh, sys);
    CHECK(res.field(mesh.node(1, 1)) == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
    // Boundary values stay zero.
    CHECK(res.field(mesh.node(0, 0)) == 0.0);
    CHECK(res.field(mesh.node(2, 1)) == 0.0);

    // Constant unit load instead: b = sum of area/3 over the six triangles.
    Assembled unit_load = assemble(mesh, one, one);
    CHECK(unit_load.b(0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("energy matrix reproduces dirichlet energy of linears") {
    for (int N : {2, 5, 8}) {
        Mesh mesh(N);
        Eigen::SparseMatrix<double> K = unit_stiffness_full(mesh);
        Eigen::VectorXd vx = interpolate(mesh, [](double x, double) { return x; });
        CHECK(vx.dot(K * vx) == doctest::Approx(1.0).epsilon(1e-12)); // |grad x|^2 = 1
        Eigen::VectorXd vs =
            interpolate(mesh, [](double x, double y) { return 2.0 * x - 3.0 * y; });
        CHECK(vs.dot(K * vs) == doctest::Approx(13.0).epsilon(1e-12));
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.num_nodes());
        CHECK(std::abs(ones.dot(K * ones)) < 1e-12); // constants cost nothing
    }
}

TEST_CASE("manufactured solution converges at second order") {
    double e4 = manufactured_error(4);
    double e8 = manufactured_error(8);
    double e16 = manufactured_error(16);
    CHECK(e4 / e8 == doctest::Approx(4.0).epsilon(0.25));
    CHECK(e8 / e16 == doctest::Approx(4.0).epsilon(0.2)); // factor 4 +- 20 percent
}

TEST_CASE("constant coefficient scaling") {
    Mesh mesh(6);
    auto load = [](double, double y) { return y; };
    Assembled a1 = assemble(mesh, [](double, double) { return 1.0; }, load);
    Assembled a4 = assemble(mesh, [](double, double) { return 4.0; }, load);
    Eigen::VectorXd p1 = solve(mesh, a1, 1e-12).field;
    Eigen::VectorXd p4 = solve(mesh, a4, 1e-12).field;
    CHECK((p4 - 0.25 * p1).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("coefficient positivity gives a positive definite system") {
    Mesh mesh(8);
    Assembled sys = assemble(
        mesh, [](double x, double y) { return 1.0 + 0.5 * std::sin(3 * x + y); },
        [](double, double y) { return y; });
    // 20 Lanczos steps from a fixed probe; the Ritz values must stay positive.
    int n = static_cast<int>(sys.A.rows());
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 0.3, 1.0).normalized();
    Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n);
    int steps = std::min(20, n);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
    double beta = 0.0;
    for (int k = 0; k < steps; ++k) {
        Eigen::VectorXd w = sys.A * v;
        double alpha = v.dot(w);
        w -= alpha * v + beta * v_prev;
        T(k, k) = alpha;
        beta = w.norm();
        if (k + 1 < steps) {
            T(k, k + 1) = T(k + 1, k) = beta;
            v_prev = v;
            v = w / beta;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);

    // Nonpositive coefficient values are rejected outright.
    CHECK_THROWS_AS(assemble(mesh, [](double x, double) { return x - 0.5; },
                             [](double, double) { return 1.0; }),
                    numerical_error);
}

TEST_CASE("solver reports its residual") {
    Mesh mesh(8);
    Assembled sys = assemble(mesh, [](double, double) { return 1.0; },
                             [](double, double y) { return y; });
    SolveResult res = solve(mesh, sys, 1e-10);
    CHECK(res.rel_residual <= 1e-10);
    CHECK(res.iterations > 0);
    CHECK(res.residual_history.size() == static_cast<std::size_t>(res.iterations));
    CHECK(res.residual_history.front() > res.residual_history.back());
    // Galerkin check: the returned interior solution satisfies the system.
    Eigen::VectorXd interior(sys.A.rows());
    int k = 0;
    for (int id = 0; id < mesh.num_nodes(); ++id)
        if (!mesh.is_boundary(id)) interior(k++) = res.field(id);
    CHECK((sys.A * interior - sys.b).norm() <= 1e-9 * sys.b.norm());
}

TEST_CASE("center value") {
    Mesh mesh(4);
    Eigen::VectorXd field = Eigen::VectorXd::Zero(mesh.num_nodes());
    field(mesh.node(2, 2)) = 2.5;
    CHECK(qoi_center(mesh, field) == 2.5);
    Mesh odd(3);
    CHECK_THROWS_AS(qoi_center(odd, Eigen::VectorXd::Zero(odd.num_nodes())),
                    std::invalid_argument);
}

TEST_CASE("field spread in the energy norm") {
    Mesh mesh(4);
    Eigen::SparseMatrix<double> K = unit_stiffness_full(mesh);
    Eigen::VectorXd v = interpolate(mesh, [](double x, double) { return x; });
    Eigen::MatrixXd fields(mesh.num_nodes(), 2);
    fields.col(0) = v;
    fields.col(1).setZero();
    // Deviations are +-v/2, so rmse = sqrt(2 * (1/4) * energy(v)) = sqrt(1/2).
    CHECK(qoi_h1_rmse(K, fields) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    Eigen::MatrixXd equal(mesh.num_nodes(), 3);
    equal.col(0) = v;
    equal.col(1) = v;
    equal.col(2) = v;
    CHECK(qoi_h1_rmse(K, equal) == 0.0);
    CHECK_THROWS_AS(qoi_h1_rmse(K, fields.col(0)), std::invalid_argument); // R < 2
}

TEST_CASE("benchmark diffusion problem") {
    DiffusionProblem prob(4, 3, 0.5, 2.0);
    Eigen::RowVectorXd x(3);
    x << 1.0, 1.0, 1.0;
    // S = 0.5 (1 + 2^-2 + 3^-2).
    CHECK(prob.field_scale(x) ==
          doctest::Approx(0.5 * (1.0 + 0.25 + 1.0 / 9.0)).epsilon(1e-14));
    // Linearity in x.
    Eigen::RowVectorXd y = 2.0 * x;
    CHECK(prob.field_scale(y) == doctest::Approx(2.0 * prob.field_scale(x)).epsilon(1e-14));

    // S = 0 is the unit-coefficient problem with load y2.
    SolveResult base = prob.solve_sample(0.0);
    Mesh mesh(4);
    Assembled sys = assemble(mesh, [](double, double) { return 1.0; },
                             [](double, double y2) { return y2; });
    SolveResult direct = solve(mesh, sys);
    CHECK((base.field - direct.field).lpNorm<Eigen::Infinity>() < 1e-12);

    // Swapping y1 and y2 transposes the solution: the coefficient is
    // swap-symmetric and the triangulation maps to itself under the swap,
    // so solving with load y1 must give the nodal transpose.
    DiffusionProblem prob8(8, 2, 0.5, 2.0);
    SolveResult with_y2 = prob8.solve_sample(0.7);
    Mesh mesh8(8);
    auto coeff = [](double x1, double y1) {
        return std::exp(0.7 * std::sin(kPi * x1) * std::sin(kPi * y1));
    };
    SolveResult with_y1 =
        solve(mesh8, assemble(mesh8, coeff, [](double x1, double) { return x1; }), 1e-10);
    for (int ix = 0; ix <= 8; ++ix)
        for (int iy = 0; iy <= 8; ++iy)
            CHECK(with_y2.field(mesh8.node(ix, iy)) ==
                  doctest::Approx(with_y1.field(mesh8.node(iy, ix)))
                      .epsilon(1e-7)
                      .scale(0.01));
}

} // TEST_SUITE
