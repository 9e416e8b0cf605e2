#include "mcf/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcf {

namespace {

void put_field(std::FILE* f, double v, bool lead_comma) {
  if (lead_comma) std::fputc(',', f);
  if (std::isnan(v)) return; // absent
  std::fprintf(f, "%.17g", v);
}

double parse_field(const std::string& field) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(field);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::FILE* open_for_write(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot write " + path);
  return f;
}

} // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::FILE* f = open_for_write(path);
  std::fputs(
      "t,max_h_sq,max_ratio,min_H_sq,total_measure,pinching_gap,embed_gap,"
      "max_traceless_sq,max_grad_h_sq\n",
      f);
  for (const auto& row : trace) {
    put_field(f, row.t, false);
    put_field(f, row.max_h_sq, true);
    put_field(f, row.max_ratio, true);
    put_field(f, row.min_H_sq, true);
    put_field(f, row.total_measure, true);
    put_field(f, row.pinching_gap, true);
    put_field(f, row.embed_gap, true);
    put_field(f, row.max_traceless_sq, true);
    put_field(f, row.max_grad_h_sq, true);
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty trace file");
  if (line.rfind("t,max_h_sq", 0) != 0)
    throw ParseError(path + ": not a trace CSV (bad header)");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 9)
      throw ParseError(path + ": malformed trace row '" + line + "'");
    TraceRow row;
    row.t = parse_field(fields[0]);
    row.max_h_sq = parse_field(fields[1]);
    row.max_ratio = parse_field(fields[2]);
    row.min_H_sq = parse_field(fields[3]);
    row.total_measure = parse_field(fields[4]);
    row.pinching_gap = parse_field(fields[5]);
    row.embed_gap = parse_field(fields[6]);
    row.max_traceless_sq = parse_field(fields[7]);
    row.max_grad_h_sq = parse_field(fields[8]);
    rows.push_back(row);
  }
  return rows;
}

void write_density_csv(const std::string& path, const DensityTrace& trace) {
  std::FILE* f = open_for_write(path);
  std::fputs("t,theta\n", f);
  for (const auto& [t, theta] : trace.samples) {
    put_field(f, t, false);
    put_field(f, theta, true);
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty CSV");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() < 2) throw ParseError(path + ": malformed row '" + line + "'");
    rows.emplace_back(parse_field(fields[0]), parse_field(fields[1]));
  }
  return rows;
}

void write_table_csv(const std::string& path, const DensityTable& table) {
  std::FILE* f = open_for_write(path);
  std::fputs("label,n,m,density\n", f);
  for (const auto& e : table.entries) {
    std::fprintf(f, "%s,%d,%d,", e.label.c_str(), e.n, e.m);
    put_field(f, e.density, false);
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

DensityTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("label,", 0) != 0)
    throw ParseError(path + ": not a density table CSV");
  DensityTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 4) throw ParseError(path + ": malformed row '" + line + "'");
    DensityTableEntry e;
    e.label = fields[0];
    e.n = std::stoi(fields[1]);
    e.m = std::stoi(fields[2]);
    e.density = parse_field(fields[3]);
    table.entries.push_back(e);
    table.n = e.n;
  }
  return table;
}

void write_residuals_csv(const std::string& path, const RescalingSequence& seq) {
  std::FILE* f = open_for_write(path);
  std::fputs("k,s,scale,residual,curvature_bound_check\n", f);
  for (size_t k = 0; k < seq.snapshots.size(); ++k)
    for (const auto& snap : seq.snapshots[k]) {
      std::fprintf(f, "%zu,", k);
      put_field(f, snap.s, false);
      put_field(f, seq.scales[k], true);
      put_field(f, snap.shrinker_residual, true);
      put_field(f, snap.curvature_bound_check, true);
      std::fputc('\n', f);
    }
  if (std::fclose(f) != 0) throw IoError("failed to flush " + path);
}

} // namespace mcf
