#include "bdis/fem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bdis/errors.hpp"

namespace bdis {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix3d element_stiffness(const Mesh& mesh, const Mesh::Tri& tri) {
    double x[3], y[3];
    for (int i = 0; i < 3; ++i) {
        x[i] = mesh.node_x(tri.v[i]);
        y[i] = mesh.node_y(tri.v[i]);
    }
    double area2 = (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
    Eigen::Matrix3d K;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        double bi = y[j] - y[k], ci = x[k] - x[j];
        for (int l = 0; l <= i; ++l) {
            int jl = (l + 1) % 3, kl = (l + 2) % 3;
            double bl = y[jl] - y[kl], cl = x[kl] - x[jl];
            K(i, l) = K(l, i) = (bi * bl + ci * cl) / (2.0 * area2);
        }
    }
    return K;
}

std::vector<int> interior_map(const Mesh& mesh) {
    std::vector<int> map(mesh.num_nodes(), -1);
    int next = 0;
    for (int id = 0; id < mesh.num_nodes(); ++id)
        if (!mesh.is_boundary(id)) map[id] = next++;
    return map;
}

// Jacobi-preconditioned CG on A x = b; residual history in units of ||b||.
Eigen::VectorXd pcg(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                    double rel_tol, int max_iter, int* iterations, double* final_res,
                    std::vector<double>* history) {
    const Eigen::Index dof = b.size();
    Eigen::VectorXd invdiag(dof);
    for (Eigen::Index i = 0; i < dof; ++i) {
        double d = A.coeff(i, i);
        if (!(d > 0.0))
            throw numerical_error("solve: nonpositive diagonal entry in stiffness matrix");
        invdiag[i] = 1.0 / d;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dof);
    double nb = b.norm();
    *iterations = 0;
    *final_res = 0.0;
    if (nb == 0.0) return x;
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = invdiag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd Ap = A * p;
        double pAp = p.dot(Ap);
        if (!(pAp > 0.0))
            throw numerical_error("solve: matrix is not positive definite");
        double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        double res = r.norm() / nb;
        history->push_back(res);
        *iterations = it;
        *final_res = res;
        if (res <= rel_tol) return x;
        z = invdiag.cwiseProduct(r);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    std::ostringstream msg;
    msg << "solve: PCG did not reach rel_tol " << rel_tol << " within " << max_iter
        << " iterations; residual history (first 3, last 3):";
    for (std::size_t i = 0; i < history->size(); ++i)
        if (i < 3 || i + 3 >= history->size()) msg << ' ' << (*history)[i];
    throw numerical_error(msg.str());
}

Eigen::VectorXd scatter_full(const Mesh& mesh, const std::vector<int>& map,
                             const Eigen::VectorXd& interior) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(mesh.num_nodes());
    for (int id = 0; id < mesh.num_nodes(); ++id)
        if (map[id] >= 0) full[id] = interior[map[id]];
    return full;
}

} // namespace

Mesh::Mesh(int N_) : N(N_) {
    if (N < 2) throw std::invalid_argument("Mesh: N must be >= 2");
    tris.reserve(2 * static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            int ll = node(i, j), lr = node(i + 1, j);
            int ul = node(i, j + 1), ur = node(i + 1, j + 1);
            tris.push_back({{ll, lr, ur}, 0, 0});
            tris.push_back({{ll, ur, ul}, 0, 0});
        }
    }
    for (Tri& t : tris) {
        t.cx = (node_x(t.v[0]) + node_x(t.v[1]) + node_x(t.v[2])) / 3.0;
        t.cy = (node_y(t.v[0]) + node_y(t.v[1]) + node_y(t.v[2])) / 3.0;
    }
}

bool Mesh::is_boundary(int id) const {
    int ix = id % (N + 1), iy = id / (N + 1);
    return ix == 0 || iy == 0 || ix == N || iy == N;
}

Assembled assemble(const Mesh& mesh, const ScalarField& coeff, const ScalarField& source) {
    const auto map = interior_map(mesh);
    const int dof = mesh.num_interior();
    const double third_area = 0.5 * mesh.h() * mesh.h() / 3.0;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(mesh.tris.size() * 9);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dof);
    for (const Mesh::Tri& tri : mesh.tris) {
        const Eigen::Matrix3d K = element_stiffness(mesh, tri);
        const double a = coeff(tri.cx, tri.cy);
        if (!(a > 0.0) || !std::isfinite(a))
            throw numerical_error("assemble: coefficient must be positive and finite");
        const double load = source(tri.cx, tri.cy) * third_area;
        for (int i = 0; i < 3; ++i) {
            const int gi = map[tri.v[i]];
            if (gi < 0) continue;
            b[gi] += load;
            for (int j = 0; j < 3; ++j) {
                const int gj = map[tri.v[j]];
                if (gj >= 0) trips.emplace_back(gi, gj, a * K(i, j));
            }
        }
    }
    Assembled sys;
    sys.A.resize(dof, dof);
    sys.A.setFromTriplets(trips.begin(), trips.end());
    sys.b = std::move(b);
    return sys;
}

Eigen::SparseMatrix<double> unit_stiffness_full(const Mesh& mesh) {
    const int n = mesh.num_nodes();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(mesh.tris.size() * 9);
    for (const Mesh::Tri& tri : mesh.tris) {
        const Eigen::Matrix3d K = element_stiffness(mesh, tri);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tri.v[i], tri.v[j], K(i, j));
    }
    Eigen::SparseMatrix<double> K1(n, n);
    K1.setFromTriplets(trips.begin(), trips.end());
    return K1;
}

SolveResult solve(const Mesh& mesh, const Assembled& sys, double rel_tol) {
    SolveResult out;
    const int max_iter = 10 * static_cast<int>(sys.b.size());
    Eigen::VectorXd interior = pcg(sys.A, sys.b, rel_tol, max_iter, &out.iterations,
                                   &out.rel_residual, &out.residual_history);
    out.field = scatter_full(mesh, interior_map(mesh), interior);
    return out;
}

double qoi_center(const Mesh& mesh, const Eigen::VectorXd& field) {
    if (mesh.N % 2 != 0)
        throw std::invalid_argument("qoi_center: mesh N must be even so a center node exists");
    if (field.size() != mesh.num_nodes())
        throw std::invalid_argument("qoi_center: field must hold every nodal value");
    return field[mesh.node(mesh.N / 2, mesh.N / 2)];
}

double qoi_h1_rmse(const Eigen::SparseMatrix<double>& K, const Eigen::MatrixXd& fields) {
    const Eigen::Index r = fields.cols();
    if (r < 2) throw std::invalid_argument("qoi_h1_rmse: needs at least two replicates");
    if (fields.rows() != K.rows())
        throw std::invalid_argument("qoi_h1_rmse: field size does not match energy matrix");
    Eigen::VectorXd mean = fields.rowwise().mean();
    double ss = 0.0;
    for (Eigen::Index c = 0; c < r; ++c) {
        Eigen::VectorXd d = mean - fields.col(c);
        ss += d.dot(K * d);
    }
    return std::sqrt(ss / static_cast<double>(r - 1));
}

DiffusionProblem::DiffusionProblem(int N, int s, double zeta, double rho_star,
                                   double rel_tol)
    : mesh_(N), rel_tol_(rel_tol) {
    if (s < 1) throw std::invalid_argument("DiffusionProblem: s must be >= 1");
    decay_.resize(s);
    for (int j = 1; j <= s; ++j)
        decay_[j - 1] = zeta * std::pow(static_cast<double>(j), -rho_star);
    load_ = assemble(mesh_, [](double, double) { return 1.0; },
                     [](double, double y2) { return y2; })
                .b;
    K1_ = unit_stiffness_full(mesh_);
}

double DiffusionProblem::field_scale(const Eigen::RowVectorXd& x) const {
    if (x.size() != decay_.size())
        throw std::invalid_argument("field_scale: point dimension does not match problem");
    return x.dot(decay_.transpose());
}

SolveResult DiffusionProblem::solve_sample(double S) const {
    Assembled sys = assemble(
        mesh_,
        [S](double y1, double y2) {
            return std::exp(S * std::sin(kPi * y1) * std::sin(kPi * y2));
        },
        [](double, double y2) { return y2; });
    return solve(mesh_, sys, rel_tol_);
}

} // namespace bdis
