#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hiersparse/assoc_array.hpp"

namespace hiersparse {

/// Recursive-matrix (Kronecker) power-law edge stream parameters.
/// Vertex count is 2^scale; quadrant probabilities default to the
/// Graph500 reference values.
struct RmatConfig {
  std::uint32_t scale = 22;
  std::uint64_t total_edges = 10'000'000;
  std::uint64_t batch_size = 100'000;
  std::array<double, 4> probs = {0.57, 0.19, 0.19, 0.05};
  std::uint64_t seed = 1;

  /// Throws ConfigError on out-of-range fields or probabilities that do
  /// not sum to 1 within 1e-12.
  void validate() const;
};

/// Deterministic, seeded R-MAT edge stream. Each edge is a pure function
/// of (seed, edge index) through a counter-based hash, so the stream is
/// bit-identical for a given config regardless of batching or host, and
/// disjoint index ranges can be generated concurrently.
class RmatGenerator {
public:
  explicit RmatGenerator(RmatConfig cfg);

  const RmatConfig& config() const { return cfg_; }
  std::uint64_t batch_count() const;
  std::uint64_t batch_size(std::uint64_t batch_index) const;

  /// Raw (source, destination) vertex ids for one edge.
  std::pair<std::uint64_t, std::uint64_t> edge(std::uint64_t edge_index) const;

  /// Triples (source key, destination key, 1) for one batch. Keys are
  /// zero-padded decimal ids so byte order equals numeric order.
  TripleList batch(std::uint64_t batch_index) const;

  std::uint32_t key_width() const { return key_width_; }
  std::string vertex_key(std::uint64_t id) const;

private:
  RmatConfig cfg_;
  std::uint32_t key_width_;
};

struct DegreeStats {
  double mean_out_degree = 0.0;        ///< edges / distinct source keys
  std::uint64_t max_out_degree = 0;
  std::uint64_t distinct_vertices = 0; ///< union of sources and destinations
};

/// Streaming degree aggregation over edge batches.
class DegreeAccumulator {
public:
  void add(const TripleList& batch);
  DegreeStats finish() const;

private:
  std::unordered_map<std::string, std::uint64_t> out_degree_;
  std::unordered_set<std::string> vertices_;
  std::uint64_t edges_ = 0;
};

DegreeStats degree_stats(const std::vector<TripleList>& batches);

} // namespace hiersparse
