#include "bresse/fem.hpp"

#include <cmath>

#include "bresse/model.hpp"

namespace bresse {

Mesh build_mesh(std::size_t s, double L) {
    if (s < 2) throw TooFewElements();
    if (!(L > 0.0) || !std::isfinite(L)) throw NonPositiveParameter("L");
    Mesh mesh;
    mesh.s = s;
    mesh.L = L;
    mesh.h = L / static_cast<double>(s);
    mesh.nodes.resize(s + 1);
    for (std::size_t i = 0; i <= s; ++i) {
        mesh.nodes[i] = L * static_cast<double>(i) / static_cast<double>(s);
    }
    mesh.nodes[s] = L;
    return mesh;
}

TriDiag TriDiag::zeros(std::size_t n) {
    TriDiag t;
    t.n = n;
    t.lower.assign(n > 0 ? n - 1 : 0, 0.0);
    t.diag.assign(n, 0.0);
    t.upper.assign(n > 0 ? n - 1 : 0, 0.0);
    return t;
}

double TriDiag::get(std::size_t i, std::size_t j) const {
    if (i == j) return diag[i];
    if (j + 1 == i) return lower[j];
    if (i + 1 == j) return upper[i];
    return 0.0;
}

void TriDiag::add(std::size_t i, std::size_t j, double v) {
    if (i == j) {
        diag[i] += v;
    } else if (j + 1 == i) {
        lower[j] += v;
    } else if (i + 1 == j) {
        upper[i] += v;
    } else {
        throw std::out_of_range("TriDiag::add outside the three diagonals");
    }
}

Vec TriDiag::apply(const Vec& x) const {
    Vec y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += lower[i - 1] * x[i - 1];
        if (i + 1 < n) v += upper[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

Vec TriDiag::apply_transpose(const Vec& x) const {
    Vec y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += upper[i - 1] * x[i - 1];
        if (i + 1 < n) v += lower[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

double inner(const TriDiag& A, const Vec& x, const Vec& y) {
    const Vec Ay = A.apply(y);
    double total = 0.0;
    for (std::size_t i = 0; i < A.n; ++i) total += x[i] * Ay[i];
    return total;
}

FemMatrices assemble(const Mesh& mesh) {
    const std::size_t n = mesh.n_nodes();
    FemMatrices fem{TriDiag::zeros(n), TriDiag::zeros(n), TriDiag::zeros(n)};
    const double h = mesh.h;

    // element matrices on [x_e, x_{e+1}]:
    //   mass (h/6) [[2, 1], [1, 2]],  stiffness (1/h) [[1, -1], [-1, 1]],
    //   coupling (1/2) [[-1, 1], [-1, 1]]  (row = test hat, column = derivative hat)
    const double me[2][2] = {{2.0 * h / 6.0, h / 6.0}, {h / 6.0, 2.0 * h / 6.0}};
    const double ke[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
    const double de[2][2] = {{-0.5, 0.5}, {-0.5, 0.5}};

    for (std::size_t e = 0; e < mesh.s; ++e) {
        const std::size_t g[2] = {e, e + 1};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                fem.M.add(g[r], g[c], me[r][c]);
                fem.K.add(g[r], g[c], ke[r][c]);
                fem.D.add(g[r], g[c], de[r][c]);
            }
        }
    }
    return fem;
}

void apply_dirichlet(TriDiag& A, const std::vector<std::size_t>& nodes) {
    for (std::size_t node : nodes) {
        if (node >= A.n) throw std::out_of_range("dirichlet node outside matrix");
        A.diag[node] = 1.0;
        if (node > 0) {
            A.lower[node - 1] = 0.0;  // row (node, node-1)
            A.upper[node - 1] = 0.0;  // column (node-1, node)
        }
        if (node + 1 < A.n) {
            A.upper[node] = 0.0;  // row (node, node+1)
            A.lower[node] = 0.0;  // column (node+1, node)
        }
    }
}

void apply_dirichlet(Vec& v, const std::vector<std::size_t>& nodes) {
    for (std::size_t node : nodes) {
        if (node >= v.size()) throw std::out_of_range("dirichlet node outside vector");
        v[node] = 0.0;
    }
}

Vec project_initial(const std::function<double(double)>& f, const Mesh& mesh) {
    Vec v(mesh.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh.nodes[i]);
    return v;
}

}  // namespace bresse
