#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "bresse/types.hpp"

namespace bresse {

class TooFewElements : public std::invalid_argument {
public:
    TooFewElements() : std::invalid_argument("mesh needs at least two elements") {}
};

/// Uniform mesh of the interval [0, L] with s elements and s+1 nodes.
struct Mesh {
    std::size_t s = 0;
    double L = 0.0;
    double h = 0.0;
    Vec nodes;

    std::size_t n_nodes() const noexcept { return s + 1; }
};

Mesh build_mesh(std::size_t s, double L);

/// Tridiagonal matrix; lower[i] = A(i+1, i) and upper[i] = A(i, i+1).
struct TriDiag {
    std::size_t n = 0;
    Vec lower;  // size n - 1
    Vec diag;   // size n
    Vec upper;  // size n - 1

    static TriDiag zeros(std::size_t n);

    double get(std::size_t i, std::size_t j) const;
    void add(std::size_t i, std::size_t j, double v);

    Vec apply(const Vec& x) const;            // A x
    Vec apply_transpose(const Vec& x) const;  // A^T x
};

/// x^T A y.
double inner(const TriDiag& A, const Vec& x, const Vec& y);

/// Hat-function matrices on a uniform mesh:
///   M(i,j) = integral eta_i eta_j        (mass)
///   K(i,j) = integral eta_i' eta_j'      (stiffness)
///   D(i,j) = integral eta_j' eta_i       (first-derivative coupling)
/// so (D u)_i tests u' against eta_i and (D^T u)_i tests u against eta_i'.
struct FemMatrices {
    TriDiag M;
    TriDiag K;
    TriDiag D;
};

FemMatrices assemble(const Mesh& mesh);

/// Row/column elimination with unit diagonal at the constrained nodes.
/// Eliminating a column is exact here because the constrained value is zero.
void apply_dirichlet(TriDiag& A, const std::vector<std::size_t>& nodes);

/// Zeroes the constrained entries of a right-hand side or nodal vector.
void apply_dirichlet(Vec& v, const std::vector<std::size_t>& nodes);

/// Nodal interpolant of f on the mesh.
Vec project_initial(const std::function<double(double)>& f, const Mesh& mesh);

}  // namespace bresse
