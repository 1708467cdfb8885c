#include "hiersparse/keyset.hpp"

#include <algorithm>
#include <cassert>

namespace hiersparse {

KeySet KeySet::from_unsorted(std::vector<std::string> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  KeySet ks;
  ks.keys_ = std::move(keys);
  return ks;
}

KeySet KeySet::from_sorted_unique(std::vector<std::string> keys) {
  assert(std::is_sorted(keys.begin(), keys.end()) &&
         std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  KeySet ks;
  ks.keys_ = std::move(keys);
  return ks;
}

std::optional<std::uint32_t> KeySet::rank(std::string_view key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key,
                             [](const std::string& a, std::string_view b) {
                               return std::string_view(a) < b;
                             });
  if (it == keys_.end() || std::string_view(*it) != key) return std::nullopt;
  return static_cast<std::uint32_t>(it - keys_.begin());
}

KeySet KeySet::set_union(const KeySet& a, const KeySet& b,
                         std::vector<std::uint32_t>& a_map,
                         std::vector<std::uint32_t>& b_map) {
  a_map.assign(a.size(), 0);
  b_map.assign(b.size(), 0);
  std::vector<std::string> merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = a.keys_[i].compare(b.keys_[j]);
    if (c < 0) {
      a_map[i++] = static_cast<std::uint32_t>(merged.size());
      merged.push_back(a.keys_[i - 1]);
    } else if (c > 0) {
      b_map[j++] = static_cast<std::uint32_t>(merged.size());
      merged.push_back(b.keys_[j - 1]);
    } else {
      a_map[i++] = static_cast<std::uint32_t>(merged.size());
      b_map[j++] = static_cast<std::uint32_t>(merged.size());
      merged.push_back(a.keys_[i - 1]);
    }
  }
  for (; i < a.size(); ++i) {
    a_map[i] = static_cast<std::uint32_t>(merged.size());
    merged.push_back(a.keys_[i]);
  }
  for (; j < b.size(); ++j) {
    b_map[j] = static_cast<std::uint32_t>(merged.size());
    merged.push_back(b.keys_[j]);
  }
  return from_sorted_unique(std::move(merged));
}

} // namespace hiersparse
