#include "mcf/immersion.hpp"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mcf {

double DiscreteImmersion::cell_measure(int c) const {
  if (intrinsic_dim == 1) {
    return (positions.row(cells(c, 1)) - positions.row(cells(c, 0))).norm();
  }
  Eigen::RowVectorXd a = positions.row(cells(c, 1)) - positions.row(cells(c, 0));
  Eigen::RowVectorXd b = positions.row(cells(c, 2)) - positions.row(cells(c, 0));
  // |a x b| in any ambient dimension via Gram determinant
  double g = a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2);
  return 0.5 * std::sqrt(std::max(0.0, g));
}

double DiscreteImmersion::total_cell_measure() const {
  double total = 0.0;
  for (int c = 0; c < num_cells(); ++c) total += cell_measure(c);
  return total;
}

const char* defect_kind_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::InvalidIndex: return "invalid-index";
    case DefectKind::RepeatedVertex: return "repeated-vertex";
    case DefectKind::ZeroMeasure: return "zero-measure";
    case DefectKind::NonManifold: return "non-manifold";
    case DefectKind::InconsistentOrientation: return "inconsistent-orientation";
  }
  return "unknown";
}

ValidationReport validate(const DiscreteImmersion& imm) {
  ValidationReport report;
  const int V = imm.num_vertices();
  const int C = imm.num_cells();
  const int k = imm.intrinsic_dim + 1;

  bool indices_ok = true;
  for (int c = 0; c < C; ++c) {
    bool bad = false;
    for (int a = 0; a < k; ++a) {
      int v = imm.cells(c, a);
      if (v < 0 || v >= V) {
        report.defects.emplace_back(c, DefectKind::InvalidIndex);
        bad = true;
        break;
      }
    }
    if (bad) {
      indices_ok = false;
      continue;
    }
    for (int a = 0; a < k && !bad; ++a)
      for (int b = a + 1; b < k; ++b)
        if (imm.cells(c, a) == imm.cells(c, b)) {
          report.defects.emplace_back(c, DefectKind::RepeatedVertex);
          bad = true;
          break;
        }
  }

  report.min_cell_measure = C > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  if (indices_ok) {
    for (int c = 0; c < C; ++c) {
      double m = imm.cell_measure(c);
      report.min_cell_measure = std::min(report.min_cell_measure, m);
      if (!(m > 0.0)) report.defects.emplace_back(c, DefectKind::ZeroMeasure);
    }
  } else {
    report.min_cell_measure = 0.0;
  }

  bool manifold = indices_ok;
  bool closed = indices_ok;
  if (indices_ok && imm.intrinsic_dim == 1) {
    std::vector<int> valence(V, 0);
    for (int c = 0; c < C; ++c) {
      ++valence[imm.cells(c, 0)];
      ++valence[imm.cells(c, 1)];
    }
    for (int c = 0; c < C; ++c) {
      if (valence[imm.cells(c, 0)] > 2 || valence[imm.cells(c, 1)] > 2) {
        report.defects.emplace_back(c, DefectKind::NonManifold);
        manifold = false;
      }
    }
    for (int v = 0; v < V; ++v)
      if (valence[v] != 2) closed = false;
  } else if (indices_ok && imm.intrinsic_dim == 2) {
    // Directed edge map; a consistent orientation means each undirected
    // edge is traversed once in each direction.
    std::map<std::pair<int, int>, std::vector<int>> edge_cells;
    for (int c = 0; c < C; ++c) {
      for (int a = 0; a < 3; ++a) {
        int i = imm.cells(c, a), j = imm.cells(c, (a + 1) % 3);
        edge_cells[{std::min(i, j), std::max(i, j)}].push_back(c);
      }
    }
    for (const auto& [edge, cs] : edge_cells) {
      if (cs.size() > 2) {
        for (int c : cs) report.defects.emplace_back(c, DefectKind::NonManifold);
        manifold = false;
      }
      if (cs.size() != 2) closed = false;
      if (cs.size() == 2) {
        // each triangle must traverse the shared edge in opposite order
        auto direction = [&](int c) {
          for (int a = 0; a < 3; ++a) {
            int i = imm.cells(c, a), j = imm.cells(c, (a + 1) % 3);
            if (std::min(i, j) == edge.first && std::max(i, j) == edge.second)
              return i == edge.first;
          }
          return true;
        };
        if (direction(cs[0]) == direction(cs[1])) {
          report.defects.emplace_back(cs[0], DefectKind::InconsistentOrientation);
          manifold = false;
        }
      }
    }
  }

  report.is_manifold = manifold && report.defects.empty();
  report.is_closed = report.is_manifold && closed;
  return report;
}

namespace {

// Strips '#' comments; returns false at EOF.
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) return true;
  }
  return false;
}

[[noreturn]] void parse_fail(const std::string& path, int lineno, const std::string& what) {
  throw ParseError(path + ":" + std::to_string(lineno) + ": " + what);
}

} // namespace

DiscreteImmersion load_immersion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  int lineno = 0;
  if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "missing NDOFF header");

  DiscreteImmersion imm;
  {
    std::istringstream ss(line);
    std::string magic;
    if (!(ss >> magic >> imm.ambient_dim >> imm.intrinsic_dim) || magic != "NDOFF")
      parse_fail(path, lineno, "malformed header, expected 'NDOFF <N> <n>'");
    std::string extra;
    if (ss >> extra) parse_fail(path, lineno, "trailing tokens in header");
  }
  if (imm.intrinsic_dim != 1 && imm.intrinsic_dim != 2)
    parse_fail(path, lineno, "intrinsic dimension must be 1 or 2");
  if (imm.ambient_dim < imm.intrinsic_dim + 1)
    parse_fail(path, lineno, "ambient dimension must be at least n+1");

  long nv = 0, nc = 0;
  if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "missing count line");
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nc) || nv < 0 || nc < 0)
      parse_fail(path, lineno, "malformed count line");
  }

  imm.positions.resize(nv, imm.ambient_dim);
  for (long v = 0; v < nv; ++v) {
    if (!next_content_line(in, line, lineno))
      parse_fail(path, lineno, "unexpected end of file in vertex block");
    std::istringstream ss(line);
    for (int d = 0; d < imm.ambient_dim; ++d)
      if (!(ss >> imm.positions(v, d)))
        parse_fail(path, lineno, "vertex row has fewer than N coordinates (dimension mismatch)");
    double extra;
    if (ss >> extra)
      parse_fail(path, lineno, "vertex row has more than N coordinates (dimension mismatch)");
  }

  const int arity = imm.intrinsic_dim + 1;
  imm.cells.resize(nc, arity);
  for (long c = 0; c < nc; ++c) {
    if (!next_content_line(in, line, lineno))
      parse_fail(path, lineno, "unexpected end of file in cell block");
    std::istringstream ss(line);
    int stated = 0;
    if (!(ss >> stated)) parse_fail(path, lineno, "malformed cell row");
    if (stated != arity)
      parse_fail(path, lineno, "cell arity " + std::to_string(stated) +
                                   " does not match intrinsic dimension");
    for (int a = 0; a < arity; ++a) {
      long idx;
      if (!(ss >> idx)) parse_fail(path, lineno, "cell row has too few indices");
      if (idx < 0 || idx >= nv)
        parse_fail(path, lineno, "vertex index " + std::to_string(idx) + " out of range");
      imm.cells(c, a) = static_cast<int>(idx);
    }
    long extra;
    if (ss >> extra) parse_fail(path, lineno, "cell row has too many indices");
  }

  return imm;
}

void save_immersion(const DiscreteImmersion& imm, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot write " + path);
  std::fprintf(f, "NDOFF %d %d\n", imm.ambient_dim, imm.intrinsic_dim);
  std::fprintf(f, "%d %d\n", imm.num_vertices(), imm.num_cells());
  for (int v = 0; v < imm.num_vertices(); ++v) {
    for (int d = 0; d < imm.ambient_dim; ++d)
      std::fprintf(f, d ? " %.17g" : "%.17g", imm.positions(v, d));
    std::fputc('\n', f);
  }
  const int arity = imm.intrinsic_dim + 1;
  for (int c = 0; c < imm.num_cells(); ++c) {
    std::fprintf(f, "%d", arity);
    for (int a = 0; a < arity; ++a) std::fprintf(f, " %d", imm.cells(c, a));
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

} // namespace mcf
