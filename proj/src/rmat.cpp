#include "hiersparse/rmat.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hiersparse/errors.hpp"

namespace hiersparse {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless counter-based hash of (seed, counter, lane).
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter,
                                  std::uint64_t lane) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ counter);
  h = mix64(h ^ (lane * kGolden));
  return h;
}

/// Uniform in [0, 1) from the top 53 bits.
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint32_t decimal_width(std::uint64_t max_value) {
  std::uint32_t w = 1;
  while (max_value >= 10) {
    max_value /= 10;
    ++w;
  }
  return w;
}

} // namespace

void RmatConfig::validate() const {
  if (scale < 1 || scale > 48) {
    throw ConfigError("rmat scale must be in [1, 48]");
  }
  if (total_edges == 0) {
    throw ConfigError("rmat total_edges must be >= 1");
  }
  if (batch_size == 0) {
    throw ConfigError("rmat batch_size must be >= 1");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw ConfigError("rmat quadrant probabilities must be >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "rmat quadrant probabilities must sum to 1 (got " << sum << ")";
    throw ConfigError(msg.str());
  }
}

RmatGenerator::RmatGenerator(RmatConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::uint64_t max_id = (std::uint64_t{1} << cfg_.scale) - 1;
  key_width_ = decimal_width(max_id);
}

std::uint64_t RmatGenerator::batch_count() const {
  return (cfg_.total_edges + cfg_.batch_size - 1) / cfg_.batch_size;
}

std::uint64_t RmatGenerator::batch_size(std::uint64_t batch_index) const {
  const std::uint64_t start = batch_index * cfg_.batch_size;
  if (start >= cfg_.total_edges) return 0;
  const std::uint64_t remaining = cfg_.total_edges - start;
  return remaining < cfg_.batch_size ? remaining : cfg_.batch_size;
}

std::pair<std::uint64_t, std::uint64_t>
RmatGenerator::edge(std::uint64_t edge_index) const {
  const double a = cfg_.probs[0];
  const double ab = a + cfg_.probs[1];
  const double abc = ab + cfg_.probs[2];
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  for (std::uint32_t level = 0; level < cfg_.scale; ++level) {
    const double u = unit_double(counter_hash(cfg_.seed, edge_index, level));
    std::uint64_t rbit = 0, cbit = 0;
    if (u < a) {
      // top-left quadrant
    } else if (u < ab) {
      cbit = 1;
    } else if (u < abc) {
      rbit = 1;
    } else {
      rbit = 1;
      cbit = 1;
    }
    row = (row << 1) | rbit;
    col = (col << 1) | cbit;
  }
  return {row, col};
}

std::string RmatGenerator::vertex_key(std::uint64_t id) const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%0*llu", static_cast<int>(key_width_),
                static_cast<unsigned long long>(id));
  return std::string(buf);
}

TripleList RmatGenerator::batch(std::uint64_t batch_index) const {
  const std::uint64_t n = batch_size(batch_index);
  const std::uint64_t start = batch_index * cfg_.batch_size;
  TripleList t;
  t.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto [src, dst] = edge(start + i);
    t.push_back(vertex_key(src), vertex_key(dst), 1.0);
  }
  return t;
}

void DegreeAccumulator::add(const TripleList& batch) {
  for (std::size_t i = 0; i < batch.size(); ++i) {
    ++out_degree_[batch.rows[i]];
    vertices_.insert(batch.rows[i]);
    vertices_.insert(batch.cols[i]);
    ++edges_;
  }
}

DegreeStats DegreeAccumulator::finish() const {
  DegreeStats stats;
  stats.distinct_vertices = vertices_.size();
  for (const auto& [key, deg] : out_degree_) {
    if (deg > stats.max_out_degree) stats.max_out_degree = deg;
  }
  if (!out_degree_.empty()) {
    stats.mean_out_degree =
        static_cast<double>(edges_) / static_cast<double>(out_degree_.size());
  }
  return stats;
}

DegreeStats degree_stats(const std::vector<TripleList>& batches) {
  DegreeAccumulator acc;
  for (const TripleList& b : batches) acc.add(b);
  return acc.finish();
}

} // namespace hiersparse
