#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace bdis {

/** Uniform triangulation of the unit square: N x N cells, each split along the
 *  lower-left to upper-right diagonal into two triangles with vertices in
 *  counterclockwise order. */
struct Mesh {
    int N; // cells per side

    struct Tri {
        int v[3];       // vertex node ids, counterclockwise
        double cx, cy;  // centroid
    };
    std::vector<Tri> tris;

    explicit Mesh(int N_);

    double h() const { return 1.0 / N; }
    int nodes_per_side() const { return N + 1; }
    int num_nodes() const { return (N + 1) * (N + 1); }
    int num_interior() const { return (N - 1) * (N - 1); }
    int node(int ix, int iy) const { return iy * (N + 1) + ix; }
    bool is_boundary(int id) const;
    double node_x(int id) const { return (id % (N + 1)) * h(); }
    double node_y(int id) const { return (id / (N + 1)) * h(); }
};

using ScalarField = std::function<double(double, double)>; // (y1, y2) -> value

/** P1 stiffness and load for -div(a grad p) = g with p = 0 on the boundary.
 *  The coefficient and source are sampled once per triangle at its centroid
 *  (one-point quadrature); each triangle spreads g(centroid) * area / 3 to its
 *  vertices. Rows/columns of boundary nodes are eliminated (their values are
 *  zero, so no right-hand-side correction is needed). */
struct Assembled {
    Eigen::SparseMatrix<double> A; // interior x interior
    Eigen::VectorXd b;             // interior
};
Assembled assemble(const Mesh& mesh, const ScalarField& coeff, const ScalarField& source);

/** Unit-coefficient stiffness over ALL nodes, boundary included. This is the
 *  discrete H1 seminorm matrix: for the P1 interpolant v of a linear function,
 *  v^T K v equals the exact Dirichlet energy. */
Eigen::SparseMatrix<double> unit_stiffness_full(const Mesh& mesh);

struct SolveResult {
    Eigen::VectorXd field; // nodal values on ALL nodes, zero on the boundary
    int iterations;
    double rel_residual;
    std::vector<double> residual_history;
};

/** Jacobi-preconditioned conjugate gradients, relative tolerance on ||r||_2 /
 *  ||b||_2, iteration cap 10 * dof. Nonconvergence throws numerical_error with
 *  the residual history attached to the message. */
SolveResult solve(const Mesh& mesh, const Assembled& sys, double rel_tol = 1e-10);

/** Value at the center node (requires N even). */
double qoi_center(const Mesh& mesh, const Eigen::VectorXd& field);

/** Field-RMSE over replicates in the unit-coefficient energy norm:
 *  sqrt( (1/(R-1)) sum_r d_r^T K d_r ), d_r = mean field - field_r.
 *  `fields` holds one replicate per column (all nodes). */
double qoi_h1_rmse(const Eigen::SparseMatrix<double>& K, const Eigen::MatrixXd& fields);

/** Rank-one log-coefficient random field of the benchmark problem:
 *  a(y; x) = exp( S(x) sin(pi y1) sin(pi y2) ),  S(x) = zeta sum_j x_j j^{-rho_star}.
 *  Cached per-triangle data lets one solve per sample reuse the mesh sweep. */
class DiffusionProblem {
public:
    DiffusionProblem(int N, int s, double zeta, double rho_star, double rel_tol = 1e-10);

    double field_scale(const Eigen::RowVectorXd& x) const; // S(x)
    /** Solve with coefficient exp(S * sinsin) and source g(y) = y2. */
    SolveResult solve_sample(double S) const;

    const Mesh& mesh() const { return mesh_; }
    const Eigen::SparseMatrix<double>& energy_matrix() const { return K1_; }

private:
    Mesh mesh_;
    Eigen::VectorXd decay_;          // zeta j^{-rho_star}
    Eigen::VectorXd load_;           // interior load for g = y2 (x-independent)
    Eigen::SparseMatrix<double> K1_; // full-node unit stiffness
    double rel_tol_;
};

} // namespace bdis
