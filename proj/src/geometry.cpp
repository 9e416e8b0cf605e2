#include "mcf/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace mcf {

namespace {

// Deterministic sign: largest-magnitude coordinate made positive.
template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>&& v) {
  int idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v(idx) < 0.0) v = -v;
}

// Orthogonal Procrustes factor aligning `from` with `to` (rows are frame
// vectors): returns R with R * from ~= to.
Eigen::MatrixXd procrustes(const Eigen::MatrixXd& to, const Eigen::MatrixXd& from) {
  if (to.rows() == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd M = to * from.transpose();
  if (M.rows() == 1) {
    Eigen::MatrixXd R(1, 1);
    R(0, 0) = M(0, 0) >= 0.0 ? 1.0 : -1.0;
    return R;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

void gather_ring(const Adjacency& adj, int v, bool two_ring, std::vector<int>& out) {
  out.clear();
  for (int j : adj.neighbors[v]) out.push_back(j);
  if (two_ring) {
    for (int j : adj.neighbors[v])
      for (int k : adj.neighbors[j])
        if (k != v) out.push_back(k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

void fill_fit_row(int n, const Eigen::RowVectorXd& d, const Eigen::MatrixXd& E,
                  Eigen::Ref<Eigen::MatrixXd> A, Eigen::Ref<Eigen::MatrixXd> W, int r) {
  Eigen::VectorXd u = E * d.transpose();
  if (n == 1) {
    A(r, 0) = u(0);
    A(r, 1) = 0.5 * u(0) * u(0);
  } else {
    A(r, 0) = u(0);
    A(r, 1) = u(1);
    A(r, 2) = 0.5 * u(0) * u(0);
    A(r, 3) = u(0) * u(1);
    A(r, 4) = 0.5 * u(1) * u(1);
  }
  W.row(r) = d - u.transpose() * E;
}

} // namespace

GeometrySnapshot compute_geometry(const DiscreteImmersion& imm) {
  return compute_geometry(imm, build_adjacency(imm));
}

GeometrySnapshot compute_geometry(const DiscreteImmersion& imm, const Adjacency& adj) {
  const int V = imm.num_vertices();
  const int N = imm.ambient_dim;
  const int n = imm.intrinsic_dim;
  const Eigen::MatrixXd& X = imm.positions;

  GeometrySnapshot g;
  g.intrinsic_dim = n;
  g.ambient_dim = N;
  g.mean_curvature.setZero(V, N);
  g.second_form.resize(V);
  g.tangent_frame.resize(V);
  g.normal_frame.resize(V);
  g.norm_h_sq.setZero(V);
  g.norm_H_sq.setZero(V);
  g.traceless_sq.setZero(V);
  g.grad_h_sq.setZero(V);
  g.grad_H_sq.setZero(V);
  g.vertex_measure.setZero(V);

  // --- dual measures, plus the arclength Laplacian for curves ---
  Eigen::MatrixXd laplace;
  if (n == 1) {
    laplace.setZero(V, N);
    for (int v = 0; v < V; ++v) {
      const auto& nbrs = adj.neighbors[v];
      if (nbrs.empty()) throw DegenerateGeometryError(v, "isolated vertex");
      double lsum = 0.0;
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(N);
      for (int j : nbrs) {
        double l = (X.row(j) - X.row(v)).norm();
        if (!(l > 0.0))
          throw DegenerateGeometryError(v, "zero-length edge at vertex " + std::to_string(v));
        lsum += l;
        acc += (X.row(j) - X.row(v)) / l;
      }
      g.vertex_measure(v) = 0.5 * lsum;
      if (nbrs.size() == 2) laplace.row(v) = (2.0 / lsum) * acc;
    }
  } else {
    for (int c = 0; c < imm.num_cells(); ++c) {
      double area = imm.cell_measure(c);
      if (!(area > 0.0))
        throw DegenerateGeometryError(imm.cells(c, 0),
                                      "zero-area triangle " + std::to_string(c));
      double third = area / 3.0;
      for (int a = 0; a < 3; ++a) g.vertex_measure(imm.cells(c, a)) += third;
    }
    for (int v = 0; v < V; ++v)
      if (!(g.vertex_measure(v) > 0.0))
        throw DegenerateGeometryError(v, "zero dual area at vertex " + std::to_string(v));
  }
  g.total_measure = g.vertex_measure.sum();

  // --- per-vertex frames and quadratic fit of the second form ---
  //
  // The 1-ring fit is pointwise consistent on irregular stencils where the
  // cotangent Laplacian of position is not (its normal component carries an
  // O(1) error at the icosphere's valence-5 vertices). For surfaces the
  // mean curvature is therefore taken as the trace of the fitted form; for
  // curves the arclength second difference is exact on uniform polygons and
  // the fitted (single) entry is trace-corrected to it.
  const int sf_rows = n * (n + 1) / 2;
  const int p = (n == 1) ? 2 : 5;
  std::vector<int> ring;
  for (int v = 0; v < V; ++v) {
    gather_ring(adj, v, false, ring);
    if (static_cast<int>(ring.size()) < p) gather_ring(adj, v, true, ring);
    const int m = static_cast<int>(ring.size());
    if (m < p)
      throw DegenerateGeometryError(v, "ring too small at vertex " + std::to_string(v));

    // local scale for conditioning
    Eigen::MatrixXd D(m, N);
    double rho = 0.0;
    for (int r = 0; r < m; ++r) {
      D.row(r) = X.row(ring[r]) - X.row(v);
      rho += D.row(r).norm();
    }
    rho /= m;
    if (!(rho > 0.0))
      throw DegenerateGeometryError(v, "collapsed ring at vertex " + std::to_string(v));
    D /= rho;

    // tangent frame: leading right singular vectors of the centered ring
    Eigen::MatrixXd ringpts(m + 1, N);
    ringpts.topRows(m) = D;
    ringpts.row(m).setZero();
    Eigen::RowVectorXd centroid = ringpts.colwise().mean();
    Eigen::MatrixXd centered = ringpts.rowwise() - centroid;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    if (svd.singularValues()(n - 1) <= 1e-10 * svd.singularValues()(0))
      throw DegenerateGeometryError(v, "degenerate tangent space at vertex " + std::to_string(v));
    Eigen::MatrixXd E = svd.matrixV().leftCols(n).transpose(); // n x N
    for (int a = 0; a < n; ++a) fix_sign(E.row(a));
    g.tangent_frame[v] = E;

    // orthonormal basis of the normal space from the complement projector
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(N, N) - E.transpose() * E;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(P);
    Eigen::MatrixXd NF = eig.eigenvectors().rightCols(N - n).transpose();
    for (int a = 0; a < N - n; ++a) fix_sign(NF.row(a));
    g.normal_frame[v] = NF;

    // least-squares quadratic graph over the tangent plane; degree-2
    // coefficients are the Hessian, with rows in the normal space
    Eigen::MatrixXd A(m, p);
    Eigen::MatrixXd W(m, N);
    for (int r = 0; r < m; ++r) fill_fit_row(n, D.row(r), E, A, W, r);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < p) {
      gather_ring(adj, v, true, ring);
      const int m2 = static_cast<int>(ring.size());
      if (m2 > m) {
        A.resize(m2, p);
        W.resize(m2, N);
        for (int r = 0; r < m2; ++r)
          fill_fit_row(n, (X.row(ring[r]) - X.row(v)) / rho, E, A, W, r);
        qr.compute(A);
      }
      if (qr.rank() < p)
        throw DegenerateGeometryError(v, "underdetermined curvature fit at vertex " +
                                             std::to_string(v));
    }
    Eigen::MatrixXd C = qr.solve(W);

    Eigen::MatrixXd h(sf_rows, N);
    if (n == 1) {
      h.row(0) = C.row(1) / rho;
    } else {
      h.row(0) = C.row(2) / rho; // (0,0)
      h.row(1) = C.row(3) / rho; // (0,1)
      h.row(2) = C.row(4) / rho; // (1,1)
    }
    // keep the entries exactly normal
    for (int r = 0; r < sf_rows; ++r)
      h.row(r) = h.row(r) - (h.row(r) * E.transpose()) * E;

    Eigen::RowVectorXd H;
    if (n == 1) {
      // arclength second difference, projected; trace-correct the fit to it
      H = laplace.row(v) - (laplace.row(v) * E.transpose()) * E;
      h.row(0) = H;
    } else {
      H = h.row(0) + h.row(2);
    }
    g.mean_curvature.row(v) = H;
    g.second_form[v] = h;

    double h_sq = h.row(0).squaredNorm();
    if (n == 2) h_sq += 2.0 * h.row(1).squaredNorm() + h.row(2).squaredNorm();
    double H_sq = H.squaredNorm();
    g.norm_h_sq(v) = h_sq;
    g.norm_H_sq(v) = H_sq;
    g.traceless_sq(v) = std::max(0.0, h_sq - H_sq / n);
  }

  // --- derivative norms ---
  //
  // Edge differences of the frame-aligned entries (Procrustes transport of
  // both the tangent and the normal frame) are assembled into the full
  // third-order tensor by least squares and projected onto its totally
  // symmetric part; the continuum nabla h is Codazzi-symmetric, and the
  // projection is what makes |nabla h|^2 >= 3/(n+2) |nabla H|^2 meaningful
  // at the discrete level. |nabla H|^2 is the trace of the same tensor.
  const int q = N - n;
  for (int v = 0; v < V; ++v) {
    const auto& nbrs = adj.neighbors[v];
    const int m = static_cast<int>(nbrs.size());
    if (m < n) continue; // leave the gradient at zero
    const Eigen::MatrixXd& Ei = g.tangent_frame[v];
    const Eigen::MatrixXd& Ni = g.normal_frame[v];
    Eigen::MatrixXd hi(sf_rows, q);
    for (int r = 0; r < sf_rows; ++r)
      hi.row(r) = g.second_form[v].row(r) * Ni.transpose();

    auto entry = [&](const Eigen::MatrixXd& h, int a, int b) {
      int idx = (n == 1) ? 0 : (std::min(a, b) == 0 ? std::max(a, b) : 2);
      return h.row(idx);
    };

    // one row per edge: U g = transported difference of h coordinates
    Eigen::MatrixXd U(m, n);
    Eigen::MatrixXd D(m, sf_rows * q);
    for (int e = 0; e < m; ++e) {
      int j = nbrs[e];
      U.row(e) = (Ei * (X.row(j) - X.row(v)).transpose()).transpose();
      Eigen::MatrixXd R = procrustes(Ei, g.tangent_frame[j]);
      Eigen::MatrixXd S = procrustes(Ni, g.normal_frame[j]);
      Eigen::MatrixXd hj(sf_rows, q);
      for (int r = 0; r < sf_rows; ++r)
        hj.row(r) = g.second_form[j].row(r) * g.normal_frame[j].transpose();
      int col = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          Eigen::RowVectorXd t = Eigen::RowVectorXd::Zero(q);
          for (int cc = 0; cc < n; ++cc)
            for (int dd = 0; dd < n; ++dd)
              t += R(a, cc) * R(b, dd) * entry(hj, cc, dd);
          t = t * S.transpose();
          D.block(e, col * q, 1, q) = t - hi.row(a == 0 ? (n == 1 ? 0 : b) : 2);
          ++col;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(U);
    if (qr.rank() < n) continue;
    // G(c, (a,b), alpha): directional derivative along frame direction c
    Eigen::MatrixXd G = qr.solve(D);

    auto g_at = [&](int c, int a, int b, int al) {
      int idx = (n == 1) ? 0 : (std::min(a, b) == 0 ? std::max(a, b) : 2);
      return G(c, idx * q + al);
    };
    double h_sq = 0.0, H_sq = 0.0;
    for (int al = 0; al < q; ++al) {
      for (int c = 0; c < n; ++c) {
        double trace = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            double sym =
                (g_at(c, a, b, al) + g_at(a, c, b, al) + g_at(b, a, c, al)) / 3.0;
            h_sq += sym * sym;
            if (a == b) trace += sym;
          }
        H_sq += trace * trace;
      }
    }
    g.grad_h_sq(v) = h_sq;
    g.grad_H_sq(v) = H_sq;
  }

  return g;
}

double pinching_gap(const GeometrySnapshot& geom, double c, double a) {
  if (!(c > 0.0) || !(a >= 0.0)) throw Error("pinching_gap requires c > 0 and a >= 0");
  double gap = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < geom.num_vertices(); ++v)
    gap = std::max(gap, geom.norm_h_sq(v) + a - c * geom.norm_H_sq(v));
  return gap;
}

double gradient_estimate_slack(const GeometrySnapshot& geom) {
  const double coeff = 3.0 / (geom.intrinsic_dim + 2.0);
  double slack = std::numeric_limits<double>::infinity();
  for (int v = 0; v < geom.num_vertices(); ++v)
    slack = std::min(slack, geom.grad_h_sq(v) - coeff * geom.grad_H_sq(v));
  return slack;
}

} // namespace mcf
