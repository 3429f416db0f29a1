#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "nullflow/metric/leaf_metric.hpp"

namespace nullflow {

// Gamma^c_ab as eight node arrays, indexed [c][a][b]; symmetric in (a, b).
template <class Scalar>
struct Christoffel {
  std::array<std::array<std::array<NodeArray<Scalar>, 2>, 2>, 2> g;

  const NodeArray<Scalar>& operator()(int c, int a, int b) const { return g[c][a][b]; }
};

template <class Scalar>
struct CurvaturePack {
  Christoffel<Scalar> christoffel;
  // Lowered R_abcd per node, row a*2+b, column c*2+d.
  std::vector<Eigen::Matrix<Scalar, 4, 4>> riemann;
  SymmetricTensorField<Scalar> ricci;
  NodeArray<Scalar> scalar;

  Scalar riemann_at(int node, int a, int b, int c, int d) const {
    return riemann[static_cast<std::size_t>(node)](a * 2 + b, c * 2 + d);
  }
};

// Eigenvalues of A relative to g, i.e. roots of det(A - lambda g) = 0, per node.
// Computed on L^-1 A L^-T with g = L L^T so equal roots stay exact.
template <class Scalar>
std::pair<Scalar, Scalar> relative_eigenvalues(const Mat2<Scalar>& A, const Mat2<Scalar>& g) {
  using std::sqrt;
  const Scalar l00 = sqrt(g(0, 0));
  const Scalar l10 = g(0, 1) / l00;
  const Scalar l11 = sqrt(g(1, 1) - l10 * l10);
  Mat2<Scalar> Li;
  Li << 1 / l00, 0, -l10 / (l00 * l11), 1 / l11;
  const Mat2<Scalar> M = Li * A * Li.transpose();
  const Scalar off = (M(0, 1) + M(1, 0)) / 2;
  return {min_eigenvalue(M(0, 0), off, M(1, 1)), max_eigenvalue(M(0, 0), off, M(1, 1))};
}

template <class Scalar>
Christoffel<Scalar> christoffel(const LeafMetric<Scalar>& metric) {
  const auto& grid = metric.grid();
  // dg[d][a][b] = d_d g_ab
  std::array<std::array<std::array<NodeArray<Scalar>, 2>, 2>, 2> dg;
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        dg[d][a][b] = diff(grid, metric(a, b), d, metric.parity(a, b));
        if (a != b) dg[d][b][a] = dg[d][a][b];
      }
    }
  }
  Christoffel<Scalar> out;
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        NodeArray<Scalar> sum = NodeArray<Scalar>::Zero(grid.size());
        for (int d = 0; d < 2; ++d) {
          sum += metric.inverse(c, d) * (dg[a][d][b] + dg[b][d][a] - dg[d][a][b]);
        }
        out.g[c][a][b] = sum / 2;
        if (a != b) out.g[c][b][a] = out.g[c][a][b];
      }
    }
  }
  return out;
}

template <class Scalar>
CurvaturePack<Scalar> curvature(const LeafMetric<Scalar>& metric) {
  const auto& grid = metric.grid();
  const int n = grid.size();
  const bool polar = grid.axis(0).kind == AxisKind::Polar;
  Christoffel<Scalar> G = christoffel(metric);

  // dG[e][c][a][b] = d_e Gamma^c_ab
  std::array<std::array<std::array<std::array<NodeArray<Scalar>, 2>, 2>, 2>, 2> dG;
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        const Parity p = polar ? parity_of(int(c == 0) + int(a == 0) + int(b == 0)) : Parity::Even;
        for (int e = 0; e < 2; ++e) {
          dG[e][c][a][b] = diff(grid, G(c, a, b), e, p);
          if (a != b) dG[e][c][b][a] = dG[e][c][a][b];
        }
      }
    }
  }

  // Mixed R^a_bcd, then lowered with g.
  auto up = [&](int a, int b, int c, int d) {
    NodeArray<Scalar> r = dG[c][a][d][b] - dG[d][a][c][b];
    for (int e = 0; e < 2; ++e) r += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
    return r;
  };
  std::array<NodeArray<Scalar>, 16> R;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) R[a * 8 + b * 4 + c * 2 + d] = NodeArray<Scalar>::Zero(n);
  for (int e = 0; e < 2; ++e) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const NodeArray<Scalar> r = up(e, b, c, d);
          for (int a = 0; a < 2; ++a) R[a * 8 + b * 4 + c * 2 + d] += metric(a, e) * r;
        }
      }
    }
  }

  // Project onto the algebraic symmetries so they hold exactly.
  std::vector<Eigen::Matrix<Scalar, 4, 4>> riemann(static_cast<std::size_t>(n),
                                                    Eigen::Matrix<Scalar, 4, 4>::Zero());
  for (int k = 0; k < n; ++k) {
    auto& m = riemann[static_cast<std::size_t>(k)];
    auto raw = [&](int a, int b, int c, int d) { return R[a * 8 + b * 4 + c * 2 + d][k]; };
    for (int a = 0; a < 2; ++a) {
      for (int b = a + 1; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          for (int d = c + 1; d < 2; ++d) {
            const Scalar v = (raw(a, b, c, d) - raw(b, a, c, d) - raw(a, b, d, c) + raw(b, a, d, c)) / 4;
            m(a * 2 + b, c * 2 + d) = v;
            m(b * 2 + a, c * 2 + d) = -v;
            m(a * 2 + b, d * 2 + c) = -v;
            m(b * 2 + a, d * 2 + c) = v;
          }
        }
      }
    }
    m = ((m + m.transpose()) / 2).eval();
  }

  // Ric_bd = g^ac R_abcd
  std::array<NodeArray<Scalar>, 4> ric;
  for (auto& r : ric) r = NodeArray<Scalar>::Zero(n);
  for (int k = 0; k < n; ++k) {
    const auto& m = riemann[static_cast<std::size_t>(k)];
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d)
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) ric[b * 2 + d][k] += metric.inverse(a, c)[k] * m(a * 2 + b, c * 2 + d);
  }
  SymmetricTensorField<Scalar> ricci{grid, ric[0], (ric[1] + ric[2]) / 2, ric[3]};
  NodeArray<Scalar> scalar = metric.inverse(0, 0) * ricci.c00 + 2 * metric.inverse(0, 1) * ricci.c01 +
                             metric.inverse(1, 1) * ricci.c11;
  return {std::move(G), std::move(riemann), std::move(ricci), std::move(scalar)};
}

}  // namespace nullflow
