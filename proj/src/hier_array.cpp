#include "hiersparse/hier_array.hpp"

#include <cassert>
#include <charconv>
#include <sstream>

#include "hiersparse/errors.hpp"

namespace hiersparse {

CutSpec::CutSpec(std::vector<std::uint64_t> cuts) : cuts_(std::move(cuts)) {
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i] < 1) {
      throw ConfigError("cut values must be >= 1");
    }
    if (i > 0 && cuts_[i] <= cuts_[i - 1]) {
      std::ostringstream msg;
      msg << "cut values must be strictly increasing; got " << cuts_[i - 1]
          << " followed by " << cuts_[i];
      throw ConfigError(msg.str());
    }
  }
}

CutSpec CutSpec::parse(std::string_view text) {
  std::vector<std::uint64_t> cuts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(pos, comma - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.begin(), field.end(), value);
    if (ec != std::errc() || ptr != field.end() || field.empty()) {
      std::ostringstream msg;
      msg << "cut list: '" << field << "' is not a positive integer";
      throw ConfigError(msg.str());
    }
    cuts.push_back(value);
    pos = comma + 1;
  }
  return CutSpec(std::move(cuts));
}

CutSpec CutSpec::geometric(std::size_t layer_count) {
  if (layer_count < 1) throw ConfigError("layer count must be >= 1");
  std::vector<std::uint64_t> cuts;
  std::uint64_t c = std::uint64_t{1} << 13;
  for (std::size_t i = 1; i < layer_count; ++i) {
    cuts.push_back(c);
    c <<= 5;
  }
  return CutSpec(std::move(cuts));
}

std::string CutSpec::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (i > 0) out << ',';
    out << cuts_[i];
  }
  return out.str();
}

HierArray::HierArray(CutSpec cuts, Semiring s)
    : semiring_(s), cuts_(std::move(cuts)) {
  layers_.assign(cuts_.layer_count(), AssocArray(s));
  stats_.assign(cuts_.layer_count(), LayerStats{});
}

void HierArray::update(const AssocArray& batch) {
  if (batch.semiring() != semiring_) {
    std::ostringstream msg;
    msg << "hier update: semiring mismatch (" << batch.semiring().name()
        << " vs " << semiring_.name() << ")";
    throw AlgebraError(msg.str());
  }
  layers_[0] = ew_add(layers_[0], batch);
  stats_[0].entries_absorbed += batch.nnz();
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (layers_[i].nnz() > cuts_[i]) {
      stats_[i + 1].entries_absorbed += layers_[i].nnz();
      if (layers_[i + 1].empty()) {
        layers_[i + 1] = std::move(layers_[i]);
      } else {
        layers_[i + 1] = ew_add(layers_[i + 1], layers_[i]);
      }
      layers_[i] = AssocArray(semiring_);
      stats_[i].cascades_out += 1;
    }
  }
#ifndef NDEBUG
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    assert(layers_[i].nnz() <= cuts_[i]);
  }
#endif
}

AssocArray HierArray::flush() const {
  AssocArray acc(semiring_);
  for (const AssocArray& layer : layers_) acc = ew_add(acc, layer);
  return acc;
}

void HierArray::compact() {
  AssocArray total = flush();
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
    layers_[i] = AssocArray(semiring_);
  }
  layers_.back() = std::move(total);
}

std::vector<std::uint64_t> HierArray::layer_nnz() const {
  std::vector<std::uint64_t> counts;
  counts.reserve(layers_.size());
  for (const AssocArray& layer : layers_) counts.push_back(layer.nnz());
  return counts;
}

std::vector<std::uint64_t> HierArray::cascade_counts() const {
  std::vector<std::uint64_t> counts;
  counts.reserve(stats_.size());
  for (const LayerStats& st : stats_) counts.push_back(st.cascades_out);
  return counts;
}

HierNnz HierArray::nnz_report() const {
  HierNnz report;
  report.per_layer = layer_nnz();
  report.flushed_total = flush().nnz();
  return report;
}

} // namespace hiersparse
