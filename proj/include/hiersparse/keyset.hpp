#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hiersparse {

/// Sorted, duplicate-free set of string keys (byte-lexicographic order).
/// Backs the hypersparse row/column label spaces: only observed keys are
/// ever materialized.
class KeySet {
public:
  KeySet() = default;

  /// Sorts and de-duplicates.
  static KeySet from_unsorted(std::vector<std::string> keys);

  /// Caller guarantees strictly increasing order.
  static KeySet from_sorted_unique(std::vector<std::string> keys);

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::string& operator[](std::size_t i) const { return keys_[i]; }
  const std::vector<std::string>& keys() const { return keys_; }

  /// Binary-search rank lookup; nullopt when absent.
  std::optional<std::uint32_t> rank(std::string_view key) const;
  bool contains(std::string_view key) const { return rank(key).has_value(); }

  /// Sorted-set union. a_map/b_map receive, per input rank, the rank of
  /// the same key in the union.
  static KeySet set_union(const KeySet& a, const KeySet& b,
                          std::vector<std::uint32_t>& a_map,
                          std::vector<std::uint32_t>& b_map);

  auto begin() const { return keys_.begin(); }
  auto end() const { return keys_.end(); }

  bool operator==(const KeySet&) const = default;

private:
  std::vector<std::string> keys_;
};

} // namespace hiersparse
