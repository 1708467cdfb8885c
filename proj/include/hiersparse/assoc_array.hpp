#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiersparse/keyset.hpp"
#include "hiersparse/semiring.hpp"

namespace hiersparse {

/// Parallel vectors of (row key, column key, value). Duplicate (row,col)
/// coordinates are permitted; construction collapses them with plus in
/// input order.
struct TripleList {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> vals;

  std::size_t size() const { return rows.size(); }
  bool well_formed() const {
    return rows.size() == cols.size() && rows.size() == vals.size();
  }
  void reserve(std::size_t n) {
    rows.reserve(n);
    cols.reserve(n);
    vals.reserve(n);
  }
  void push_back(std::string row, std::string col, double val) {
    rows.push_back(std::move(row));
    cols.push_back(std::move(col));
    vals.push_back(val);
  }
  void clear() {
    rows.clear();
    cols.clear();
    vals.clear();
  }
};

/// Stored coordinate: ranks into the owning array's key sets.
struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  double val;

  bool operator==(const Entry&) const = default;
};

/// Row/column selection for extract(): either everything or an explicit
/// key list (keys absent from the array are ignored).
class KeySelection {
public:
  static KeySelection all() { return KeySelection(true, {}); }
  static KeySelection of(std::vector<std::string> keys) {
    return KeySelection(false, std::move(keys));
  }
  bool is_all() const { return all_; }
  const std::vector<std::string>& keys() const { return keys_; }

private:
  KeySelection(bool all, std::vector<std::string> keys)
      : all_(all), keys_(std::move(keys)) {}
  bool all_;
  std::vector<std::string> keys_;
};

/// Hypersparse associative array: a mapping from (row key, column key)
/// pairs to semiring values. Storage is a row-major sorted coordinate
/// list over ranks into the materialized key sets; key sets hold exactly
/// the keys that index at least one stored entry, and no stored value
/// ever equals the semiring's zero. Operations return new arrays; an
/// array is immutable once built and safe to share across threads.
class AssocArray {
public:
  /// Empty array over the given semiring.
  explicit AssocArray(Semiring s) : semiring_(s) {}

  /// Builds from triples: key sets are the sorted unique keys of the
  /// surviving entries, duplicate coordinates collapse with plus in input
  /// order, and exact zeros are dropped.
  static AssocArray build(const TripleList& t, Semiring s);

  /// Array with value one at (k1[i], k2[i]). Requires |k1| == |k2|, no
  /// duplicate coordinate, and at most one entry per row and per column.
  static AssocArray identity_from_keys(const std::vector<std::string>& k1,
                                       const std::vector<std::string>& k2,
                                       Semiring s);

  const KeySet& row_keys() const { return row_keys_; }
  const KeySet& col_keys() const { return col_keys_; }
  const Semiring& semiring() const { return semiring_; }
  const std::vector<Entry>& entries() const { return entries_; }

  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Value at (row, col), or nullopt when the coordinate is not stored.
  std::optional<double> at(std::string_view row, std::string_view col) const;

  TripleList to_triples() const;

  template <typename F>
  void for_each(F&& f) const {
    for (const Entry& e : entries_) f(row_keys_[e.row], col_keys_[e.col], e.val);
  }

  AssocArray transposed() const;
  AssocArray extract(const KeySelection& rows, const KeySelection& cols) const;

  /// Same semiring, same key sets, same entries (exact values).
  bool operator==(const AssocArray& other) const;

  friend AssocArray ew_add(const AssocArray& a, const AssocArray& b);
  friend AssocArray ew_mult(const AssocArray& a, const AssocArray& b);
  friend AssocArray array_mult(const AssocArray& a, const AssocArray& b);

private:
  AssocArray(Semiring s, KeySet rows, KeySet cols, std::vector<Entry> entries)
      : semiring_(s),
        row_keys_(std::move(rows)),
        col_keys_(std::move(cols)),
        entries_(std::move(entries)) {}

  /// Drops key-set entries that no longer index any stored entry.
  void compact_keys();

  Semiring semiring_;
  KeySet row_keys_;
  KeySet col_keys_;
  std::vector<Entry> entries_;
};

/// C(k1,k2) = A(k1,k2) plus B(k1,k2); union of supports, zeros purged.
AssocArray ew_add(const AssocArray& a, const AssocArray& b);

/// C(k1,k2) = A(k1,k2) times B(k1,k2); intersection of supports.
AssocArray ew_mult(const AssocArray& a, const AssocArray& b);

/// C(k1,k2) = plus-reduction over shared keys k of A(k1,k) times B(k,k2).
/// Contraction keys are matched by string equality between A's column
/// keys and B's row keys.
AssocArray array_mult(const AssocArray& a, const AssocArray& b);

} // namespace hiersparse
