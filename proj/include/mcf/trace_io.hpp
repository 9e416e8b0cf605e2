#pragma once

#include <string>
#include <vector>

#include "mcf/blowup.hpp"
#include "mcf/classify.hpp"
#include "mcf/flow.hpp"
#include "mcf/monotonicity.hpp"

namespace mcf {

/// Trace CSV columns:
///   t,max_h_sq,max_ratio,min_H_sq,total_measure,pinching_gap,embed_gap,
///   max_traceless_sq,max_grad_h_sq
/// Optional quantities (NaN) are written as empty fields. All numbers are
/// rendered with 17 significant digits, so identical runs produce
/// byte-identical files.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);
std::vector<TraceRow> read_trace_csv(const std::string& path);

void write_density_csv(const std::string& path, const DensityTrace& trace);
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

void write_table_csv(const std::string& path, const DensityTable& table);
DensityTable read_table_csv(const std::string& path);

/// Residual table: k,s,residual,curvature_bound_check rows per snapshot.
void write_residuals_csv(const std::string& path, const RescalingSequence& seq);

} // namespace mcf
