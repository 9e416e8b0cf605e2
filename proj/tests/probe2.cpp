// Scratch: compare cotan-Laplacian H with quadratic/cubic fit-trace H on
// icospheres and cylinders. Not part of the test suite.
#include <Eigen/Dense>
#include <cstdio>
#include <vector>

#include "mcf/oracle.hpp"
#include "mcf/topology.hpp"

using namespace mcf;

// fit order: 2 = quadratic, 3 = quadratic + cubic terms
static void fit_H(const DiscreteImmersion& imm, bool two_ring, int order,
                  const char* tag, double exact) {
  Adjacency adj = build_adjacency(imm);
  const auto& X = imm.positions;
  const int N = imm.ambient_dim;
  double Hmin = 1e300, Hmax = -1e300;
  std::vector<double> Hs(imm.num_vertices());
  for (int v = 0; v < imm.num_vertices(); ++v) {
    if (adj.boundary_vertex[v]) { Hs[v] = exact; continue; }
    std::vector<int> ring = adj.neighbors[v];
    if (two_ring) {
      for (int j : adj.neighbors[v])
        for (int k : adj.neighbors[j]) if (k != v) ring.push_back(k);
      std::sort(ring.begin(), ring.end());
      ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    }
    int m = (int)ring.size();
    Eigen::MatrixXd D(m + 1, N);
    for (int r = 0; r < m; ++r) D.row(r) = X.row(ring[r]) - X.row(v);
    D.row(m).setZero();
    double rho = 0;
    for (int r = 0; r < m; ++r) rho += D.row(r).norm();
    rho /= m;
    D /= rho;
    Eigen::RowVectorXd centroid = D.colwise().mean();
    Eigen::MatrixXd centered = D.rowwise() - centroid;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    Eigen::MatrixXd E = svd.matrixV().leftCols(2).transpose();
    int p = order == 2 ? 5 : 9;
    if (m < p) { Hs[v] = exact; continue; }
    Eigen::MatrixXd A(m, p);
    Eigen::MatrixXd W(m, N);
    for (int r = 0; r < m; ++r) {
      Eigen::RowVectorXd d = D.row(r);
      Eigen::Vector2d u = E * d.transpose();
      A(r, 0) = u(0); A(r, 1) = u(1);
      A(r, 2) = 0.5 * u(0) * u(0); A(r, 3) = u(0) * u(1); A(r, 4) = 0.5 * u(1) * u(1);
      if (order == 3) {
        A(r, 5) = u(0) * u(0) * u(0); A(r, 6) = u(0) * u(0) * u(1);
        A(r, 7) = u(0) * u(1) * u(1); A(r, 8) = u(1) * u(1) * u(1);
      }
      W.row(r) = d - u.transpose() * E;
    }
    Eigen::MatrixXd C = A.colPivHouseholderQr().solve(W);
    double H = (C.row(2) + C.row(4)).norm() / rho;
    Hs[v] = H;
    Hmin = std::min(Hmin, H); Hmax = std::max(Hmax, H);
  }
  // neighbor-difference floor for grad estimate
  double dmax = 0;
  for (int v = 0; v < imm.num_vertices(); ++v) {
    if (adj.boundary_vertex[v]) continue;
    for (int j : adj.neighbors[v]) {
      if (adj.boundary_vertex[j]) continue;
      double l = (X.row(j) - X.row(v)).norm();
      dmax = std::max(dmax, std::abs(Hs[j] - Hs[v]) / l);
    }
  }
  std::printf("%-34s |H| in [%.6f, %.6f]  relerr [%.2e, %.2e]  gradH floor ~%.3e\n",
              tag, Hmin, Hmax, Hmin / exact - 1, Hmax / exact - 1, dmax * dmax);
}

int main() {
  DiscreteImmersion s4 = icosphere(4, 1.0);
  DiscreteImmersion s5 = icosphere(5, 1.0);
  fit_H(s4, false, 2, "sphere lvl4 quad 1-ring", 2.0);
  fit_H(s4, true, 2,  "sphere lvl4 quad 2-ring", 2.0);
  fit_H(s4, true, 3,  "sphere lvl4 cubic 2-ring", 2.0);
  fit_H(s5, false, 2, "sphere lvl5 quad 1-ring", 2.0);
  fit_H(s5, true, 2,  "sphere lvl5 quad 2-ring", 2.0);
  fit_H(s5, true, 3,  "sphere lvl5 cubic 2-ring", 2.0);
  DiscreteImmersion cyl = cylinder_mesh(1.0, 6.0, 48);
  fit_H(cyl, false, 2, "cylinder 48 quad 1-ring", 1.0);
  fit_H(cyl, true, 2,  "cylinder 48 quad 2-ring", 1.0);
  fit_H(cyl, true, 3,  "cylinder 48 cubic 2-ring", 1.0);
  return 0;
}
