#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hiersparse/hier_array.hpp"
#include "hiersparse/rmat.hpp"
#include "hiersparse/triple_io.hpp"

namespace hiersparse {

/// Resolves a --cuts argument: the presets "none" (or empty), "few-wide"
/// = [2^17, 2^23] and "many-narrow" = [2^13, 2^16, 2^19, 2^22], or a
/// literal comma-separated cut list.
CutSpec resolve_cuts(std::string_view text);

/// One experiment: an R-MAT stream pushed through a hierarchical array,
/// batch by batch, with per-batch timing.
struct BenchConfig {
  RmatConfig rmat;
  CutSpec cuts;                   ///< resolved before the run
  std::string cuts_label = "none"; ///< preset name or literal list, for reports
  std::string semiring_name = "plus_times";
  std::uint32_t instances = 1;
  std::uint64_t warmup_batches = 2; ///< excluded from cum_rate
  std::string out_dir;              ///< empty: no files written
  std::string dump_triples;         ///< empty: no edge dump (instance 0 only)

  void validate() const;

  /// Single-line config record embedded as a '#' comment in every CSV.
  std::string echo() const;
};

/// Per-instance outcome. rate_edges / rate_seconds are the post-warmup
/// totals that define cum_rate (all batches if the run never leaves
/// warmup).
struct InstanceResult {
  std::uint32_t instance = 0;
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
  std::uint64_t edges = 0;
  double gen_seconds = 0.0;    ///< stream generation, outside the timed path
  double update_seconds = 0.0; ///< construct + hier update, all batches
  std::uint64_t rate_edges = 0;
  double rate_seconds = 0.0;
  double cum_rate = 0.0;
  std::uint64_t flush_nnz = 0;
  bool flush_checked = false; ///< flat-fold reference compared (runs ≤ 1e6 edges)
  std::uint64_t reference_flush_nnz = 0;
  std::vector<std::uint64_t> final_layer_nnz;
  std::vector<std::uint64_t> cascades;
};

struct RunReport {
  BenchConfig config;
  std::string host;
  std::string timestamp; ///< UTC, ISO 8601
  std::vector<InstanceResult> instances;
  /// Total post-warmup edges across instances over the slowest instance's
  /// post-warmup seconds. Equals cum_rate when instances == 1.
  double aggregate_rate = 0.0;
};

/// Runs one instance (config must have instances == 1): generates the
/// stream batch by batch, times construct + update per batch, emits
/// MetricsRows, and on runs ≤ 1e6 edges verifies the hierarchy's flush
/// against a flat ew_add fold of the same stream. Writes
/// instance_0_metrics.csv and summary.csv under out_dir when set.
RunReport run_single(const BenchConfig& cfg);

/// Share-nothing scaling: cfg.instances workers, each with seed
/// rmat.seed + instance index and a private HierArray, run concurrently
/// on their own threads. A worker failure aborts the whole run with that
/// worker's error.
RunReport run_scaling(const BenchConfig& cfg);

/// One sweep line per cut configuration, all on the identical stream.
struct SweepRow {
  std::string label;
  std::string cuts; ///< resolved values, semicolon-joined
  double final_cum_rate = 0.0;
  double min_inst_rate = 0.0;
  double max_inst_rate = 0.0;
  std::vector<std::uint64_t> cascades;
  std::uint64_t flush_nnz = 0;
};

/// Runs run_single once per cut spec (preset name or literal list) on the
/// identical stream and collects the comparison table. Requires at least
/// two specs. Writes sweep.csv plus per-spec sweep_<i>_metrics.csv under
/// base.out_dir when set.
std::vector<SweepRow> run_sweep(const BenchConfig& base,
                                const std::vector<std::string>& cut_specs);

/// Least-squares slope of log(inst_rate) against log(cumulative_edges);
/// negative means throughput decays as the structure grows (the 0-cut
/// signature). Rows with nonpositive rate or edge count are skipped.
double log_log_slope(const std::vector<MetricsRow>& rows);

} // namespace hiersparse
