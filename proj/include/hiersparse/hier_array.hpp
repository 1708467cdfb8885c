#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hiersparse/assoc_array.hpp"

namespace hiersparse {

/// Strictly increasing nonzero-count thresholds c_1 < ... < c_{N-1}.
/// Empty means a single unbounded layer (the degenerate 0-cut case).
class CutSpec {
public:
  CutSpec() = default;
  explicit CutSpec(std::vector<std::uint64_t> cuts);

  /// Parses a comma-separated integer list, e.g. "8192,262144,8388608".
  /// An empty string yields the 0-cut spec.
  static CutSpec parse(std::string_view text);

  /// Default schedule for a requested layer count: geometric with
  /// c_1 = 2^13 and ratio 2^5.
  static CutSpec geometric(std::size_t layer_count);

  std::size_t size() const { return cuts_.size(); }
  bool empty() const { return cuts_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return cuts_[i]; }
  const std::vector<std::uint64_t>& values() const { return cuts_; }
  std::size_t layer_count() const { return cuts_.size() + 1; }

  std::string to_string() const;

  bool operator==(const CutSpec&) const = default;

private:
  std::vector<std::uint64_t> cuts_;
};

struct LayerStats {
  std::uint64_t cascades_out = 0;     ///< times this layer spilled upward
  std::uint64_t entries_absorbed = 0; ///< cumulative nnz added into this layer
};

struct HierNnz {
  std::vector<std::uint64_t> per_layer;
  std::uint64_t flushed_total = 0;
};

/// N-layer hierarchical associative array. Batches land in the smallest
/// layer; when a layer's nonzero count exceeds its cut it is added into
/// the next layer and cleared, in one ascending pass per update, so the
/// bulk of update work stays in small, cache-resident arrays. Owned by a
/// single stream; updates are strictly sequential.
class HierArray {
public:
  HierArray(CutSpec cuts, Semiring s);

  /// Adds a batch to the lowest layer, then cascades: for each i in
  /// ascending order, if nnz(A_i) > c_i then A_{i+1} += A_i and A_i is
  /// cleared. The top layer is unbounded.
  void update(const AssocArray& batch);

  /// Plus-sum of all layers, left to right. Non-destructive.
  AssocArray flush() const;

  /// Replaces the top layer with flush() and clears the rest.
  void compact();

  std::size_t layer_count() const { return layers_.size(); }
  const AssocArray& layer(std::size_t i) const { return layers_[i]; }
  const CutSpec& cuts() const { return cuts_; }
  const Semiring& semiring() const { return semiring_; }
  const std::vector<LayerStats>& stats() const { return stats_; }

  std::vector<std::uint64_t> layer_nnz() const;
  std::vector<std::uint64_t> cascade_counts() const;

  /// Per-layer nonzero counts plus the flushed total (overlap collapses,
  /// so the total never exceeds the per-layer sum).
  HierNnz nnz_report() const;

private:
  Semiring semiring_;
  CutSpec cuts_;
  std::vector<AssocArray> layers_;
  std::vector<LayerStats> stats_;
};

} // namespace hiersparse
