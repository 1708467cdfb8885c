#include "hiersparse/assoc_array.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>

#include "hiersparse/errors.hpp"

namespace hiersparse {

namespace {

constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

inline std::uint64_t coord_code(std::uint32_t row, std::uint32_t col) {
  return (static_cast<std::uint64_t>(row) << 32) | col;
}

/// Big-endian pack of the first 8 bytes; orders like the string itself,
/// with ties resolved by a full compare.
inline std::uint64_t key_prefix(std::string_view s) {
  std::uint64_t p = 0;
  const std::size_t n = s.size() < 8 ? s.size() : 8;
  for (std::size_t i = 0; i < n; ++i) {
    p |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i]))
         << (56 - 8 * i);
  }
  return p;
}

/// Sorts the keys of src, assigns each position its rank among the unique
/// sorted keys, and returns those keys. One pass shared by rows and cols
/// during construction; avoids per-triple binary searches.
std::vector<std::string> ranked_unique_keys(const std::vector<std::string>& src,
                                            std::vector<std::uint32_t>& rank_of) {
  struct Pk {
    std::uint64_t prefix;
    std::uint32_t idx;
  };
  const std::size_t n = src.size();
  std::vector<Pk> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = {key_prefix(src[i]), static_cast<std::uint32_t>(i)};
  }
  std::sort(order.begin(), order.end(), [&src](const Pk& x, const Pk& y) {
    if (x.prefix != y.prefix) return x.prefix < y.prefix;
    return src[x.idx] < src[y.idx];
  });
  rank_of.assign(n, 0);
  std::vector<std::string> keys;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& s = src[order[k].idx];
    if (keys.empty() || keys.back() != s) keys.push_back(s);
    rank_of[order[k].idx] = static_cast<std::uint32_t>(keys.size() - 1);
  }
  return keys;
}

void require_same_semiring(const AssocArray& a, const AssocArray& b,
                           const char* op) {
  if (a.semiring() != b.semiring()) {
    std::ostringstream msg;
    msg << op << ": semiring mismatch (" << a.semiring().name() << " vs "
        << b.semiring().name() << ")";
    throw AlgebraError(msg.str());
  }
}

} // namespace

AssocArray AssocArray::build(const TripleList& t, Semiring s) {
  if (!t.well_formed()) {
    std::ostringstream msg;
    msg << "malformed triples: lengths differ (rows=" << t.rows.size()
        << " cols=" << t.cols.size() << " vals=" << t.vals.size() << ")";
    throw DomainError(msg.str());
  }
  if (t.size() >= kNoRank) {
    throw DomainError("triple list too large for 32-bit coordinate ranks");
  }
  for (double v : t.vals) s.check_value(v);
  if (t.size() == 0) return AssocArray(s);

  const std::size_t n = t.size();
  std::vector<std::uint32_t> row_rank, col_rank;
  std::vector<std::string> rkeys = ranked_unique_keys(t.rows, row_rank);
  std::vector<std::string> ckeys = ranked_unique_keys(t.cols, col_rank);

  // Sort coordinates; the position component keeps duplicate coordinates
  // in input order so the plus-fold below is the documented left fold.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) {
    keyed[i] = {coord_code(row_rank[i], col_rank[i]),
                static_cast<std::uint32_t>(i)};
  }
  std::sort(keyed.begin(), keyed.end());

  const double zero = s.zero();
  std::vector<Entry> entries;
  entries.reserve(n);
  bool dropped = false;
  std::size_t i = 0;
  while (i < n) {
    const std::uint64_t code = keyed[i].first;
    double acc = t.vals[keyed[i].second];
    std::size_t j = i + 1;
    for (; j < n && keyed[j].first == code; ++j) {
      acc = s.plus(acc, t.vals[keyed[j].second]);
    }
    if (acc != zero) {
      entries.push_back({static_cast<std::uint32_t>(code >> 32),
                         static_cast<std::uint32_t>(code & 0xffffffffu), acc});
    } else {
      dropped = true;
    }
    i = j;
  }

  AssocArray out(s, KeySet::from_sorted_unique(std::move(rkeys)),
                 KeySet::from_sorted_unique(std::move(ckeys)),
                 std::move(entries));
  if (dropped) out.compact_keys();
  return out;
}

AssocArray AssocArray::identity_from_keys(const std::vector<std::string>& k1,
                                          const std::vector<std::string>& k2,
                                          Semiring s) {
  if (k1.size() != k2.size()) {
    std::ostringstream msg;
    msg << "identity_from_keys: key sequences differ in length ("
        << k1.size() << " vs " << k2.size() << ")";
    throw DomainError(msg.str());
  }
  if (!std::isfinite(s.one())) {
    std::ostringstream msg;
    msg << "identity_from_keys: multiplicative identity of semiring "
        << s.name() << " is infinite and cannot be stored";
    throw DomainError(msg.str());
  }
  const std::size_t n = k1.size();
  std::vector<std::pair<std::string_view, std::string_view>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {k1[i], k2[i]};
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (pairs[i] == pairs[i - 1]) {
      std::ostringstream msg;
      msg << "identity_from_keys: duplicate coordinate (" << pairs[i].first
          << ", " << pairs[i].second << ")";
      throw DomainError(msg.str());
    }
  }
  auto check_unique = [](const std::vector<std::string>& ks, const char* which) {
    std::vector<std::string_view> sorted(ks.begin(), ks.end());
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      std::ostringstream msg;
      msg << "identity_from_keys: " << which << " key '" << *dup
          << "' repeated; at most one entry per row and per column";
      throw DomainError(msg.str());
    }
  };
  check_unique(k1, "row");
  check_unique(k2, "column");

  TripleList t;
  t.rows = k1;
  t.cols = k2;
  t.vals.assign(n, s.one());
  return build(t, s);
}

std::optional<double> AssocArray::at(std::string_view row,
                                     std::string_view col) const {
  auto r = row_keys_.rank(row);
  auto c = col_keys_.rank(col);
  if (!r || !c) return std::nullopt;
  const std::uint64_t code = coord_code(*r, *c);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                             [](const Entry& e, std::uint64_t k) {
                               return coord_code(e.row, e.col) < k;
                             });
  if (it == entries_.end() || coord_code(it->row, it->col) != code) {
    return std::nullopt;
  }
  return it->val;
}

TripleList AssocArray::to_triples() const {
  TripleList t;
  t.reserve(entries_.size());
  for (const Entry& e : entries_) {
    t.push_back(row_keys_[e.row], col_keys_[e.col], e.val);
  }
  return t;
}

AssocArray AssocArray::transposed() const {
  std::vector<Entry> flipped;
  flipped.reserve(entries_.size());
  for (const Entry& e : entries_) flipped.push_back({e.col, e.row, e.val});
  std::sort(flipped.begin(), flipped.end(), [](const Entry& x, const Entry& y) {
    return coord_code(x.row, x.col) < coord_code(y.row, y.col);
  });
  return AssocArray(semiring_, col_keys_, row_keys_, std::move(flipped));
}

AssocArray AssocArray::extract(const KeySelection& rows,
                               const KeySelection& cols) const {
  auto mask_for = [](const KeySelection& sel, const KeySet& ks) {
    std::vector<std::uint8_t> mask(ks.size(), sel.is_all() ? 1 : 0);
    if (!sel.is_all()) {
      for (const std::string& k : sel.keys()) {
        if (auto r = ks.rank(k)) mask[*r] = 1;
      }
    }
    return mask;
  };
  const auto rmask = mask_for(rows, row_keys_);
  const auto cmask = mask_for(cols, col_keys_);
  std::vector<Entry> kept;
  for (const Entry& e : entries_) {
    if (rmask[e.row] && cmask[e.col]) kept.push_back(e);
  }
  AssocArray out(semiring_, row_keys_, col_keys_, std::move(kept));
  out.compact_keys();
  return out;
}

bool AssocArray::operator==(const AssocArray& other) const {
  return semiring_ == other.semiring_ && row_keys_ == other.row_keys_ &&
         col_keys_ == other.col_keys_ && entries_ == other.entries_;
}

void AssocArray::compact_keys() {
  std::vector<std::uint8_t> rused(row_keys_.size(), 0);
  std::vector<std::uint8_t> cused(col_keys_.size(), 0);
  for (const Entry& e : entries_) {
    rused[e.row] = 1;
    cused[e.col] = 1;
  }
  auto all_used = [](const std::vector<std::uint8_t>& u) {
    return std::find(u.begin(), u.end(), 0) == u.end();
  };
  const bool rows_ok = all_used(rused);
  const bool cols_ok = all_used(cused);
  if (rows_ok && cols_ok) return;

  auto rebuild = [](const KeySet& ks, const std::vector<std::uint8_t>& used,
                    std::vector<std::uint32_t>& remap) {
    remap.assign(ks.size(), 0);
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (used[i]) {
        remap[i] = static_cast<std::uint32_t>(kept.size());
        kept.push_back(ks[i]);
      }
    }
    return KeySet::from_sorted_unique(std::move(kept));
  };
  std::vector<std::uint32_t> rmap, cmap;
  if (!rows_ok) row_keys_ = rebuild(row_keys_, rused, rmap);
  if (!cols_ok) col_keys_ = rebuild(col_keys_, cused, cmap);
  for (Entry& e : entries_) {
    if (!rows_ok) e.row = rmap[e.row];
    if (!cols_ok) e.col = cmap[e.col];
  }
}

AssocArray ew_add(const AssocArray& a, const AssocArray& b) {
  require_same_semiring(a, b, "ew_add");
  if (a.empty()) return b;
  if (b.empty()) return a;

  std::vector<std::uint32_t> ar, br, ac, bc;
  KeySet rows = KeySet::set_union(a.row_keys_, b.row_keys_, ar, br);
  KeySet cols = KeySet::set_union(a.col_keys_, b.col_keys_, ac, bc);

  const Semiring& s = a.semiring_;
  const double zero = s.zero();
  const std::vector<Entry>& ea = a.entries_;
  const std::vector<Entry>& eb = b.entries_;
  std::vector<Entry> out;
  out.reserve(ea.size() + eb.size());

  // Remaps are strictly increasing, so both remapped streams stay sorted.
  std::size_t i = 0, j = 0;
  std::uint64_t ka = coord_code(ar[ea[0].row], ac[ea[0].col]);
  std::uint64_t kb = coord_code(br[eb[0].row], bc[eb[0].col]);
  bool dropped = false;
  while (i < ea.size() && j < eb.size()) {
    if (ka < kb) {
      out.push_back({static_cast<std::uint32_t>(ka >> 32),
                     static_cast<std::uint32_t>(ka), ea[i].val});
      if (++i < ea.size()) ka = coord_code(ar[ea[i].row], ac[ea[i].col]);
    } else if (kb < ka) {
      out.push_back({static_cast<std::uint32_t>(kb >> 32),
                     static_cast<std::uint32_t>(kb), eb[j].val});
      if (++j < eb.size()) kb = coord_code(br[eb[j].row], bc[eb[j].col]);
    } else {
      const double v = s.plus(ea[i].val, eb[j].val);
      if (v != zero) {
        out.push_back({static_cast<std::uint32_t>(ka >> 32),
                       static_cast<std::uint32_t>(ka), v});
      } else {
        dropped = true;
      }
      if (++i < ea.size()) ka = coord_code(ar[ea[i].row], ac[ea[i].col]);
      if (++j < eb.size()) kb = coord_code(br[eb[j].row], bc[eb[j].col]);
    }
  }
  for (; i < ea.size(); ++i) {
    out.push_back({ar[ea[i].row], ac[ea[i].col], ea[i].val});
  }
  for (; j < eb.size(); ++j) {
    out.push_back({br[eb[j].row], bc[eb[j].col], eb[j].val});
  }

  AssocArray result(s, std::move(rows), std::move(cols), std::move(out));
  if (dropped) result.compact_keys();
  return result;
}

AssocArray ew_mult(const AssocArray& a, const AssocArray& b) {
  require_same_semiring(a, b, "ew_mult");
  const Semiring& s = a.semiring_;
  if (a.empty() || b.empty()) return AssocArray(s);

  std::vector<std::uint32_t> ar, br, ac, bc;
  KeySet rows = KeySet::set_union(a.row_keys_, b.row_keys_, ar, br);
  KeySet cols = KeySet::set_union(a.col_keys_, b.col_keys_, ac, bc);

  const double zero = s.zero();
  std::vector<Entry> out;
  std::size_t i = 0, j = 0;
  const std::vector<Entry>& ea = a.entries_;
  const std::vector<Entry>& eb = b.entries_;
  while (i < ea.size() && j < eb.size()) {
    const std::uint64_t ka = coord_code(ar[ea[i].row], ac[ea[i].col]);
    const std::uint64_t kb = coord_code(br[eb[j].row], bc[eb[j].col]);
    if (ka < kb) {
      ++i;
    } else if (kb < ka) {
      ++j;
    } else {
      const double v = s.times(ea[i].val, eb[j].val);
      if (v != zero) {
        out.push_back({static_cast<std::uint32_t>(ka >> 32),
                       static_cast<std::uint32_t>(ka), v});
      }
      ++i;
      ++j;
    }
  }

  AssocArray result(s, std::move(rows), std::move(cols), std::move(out));
  result.compact_keys();
  return result;
}

AssocArray array_mult(const AssocArray& a, const AssocArray& b) {
  require_same_semiring(a, b, "array_mult");
  const Semiring& s = a.semiring_;
  if (a.empty() || b.empty()) return AssocArray(s);

  // Contraction keys: A's column labels matched to B's row labels by
  // string equality.
  std::vector<std::uint32_t> a_col_to_b_row(a.col_keys_.size(), kNoRank);
  {
    std::size_t i = 0, j = 0;
    while (i < a.col_keys_.size() && j < b.row_keys_.size()) {
      const int c = a.col_keys_[i].compare(b.row_keys_[j]);
      if (c < 0) {
        ++i;
      } else if (c > 0) {
        ++j;
      } else {
        a_col_to_b_row[i++] = static_cast<std::uint32_t>(j++);
      }
    }
  }

  // Row offsets over B's materialized rows (entries are row-major).
  std::vector<std::size_t> b_row_start(b.row_keys_.size() + 1, 0);
  for (const Entry& e : b.entries_) ++b_row_start[e.row + 1];
  for (std::size_t r = 0; r < b.row_keys_.size(); ++r) {
    b_row_start[r + 1] += b_row_start[r];
  }

  const double zero = s.zero();
  std::vector<Entry> out;
  std::size_t i = 0;
  while (i < a.entries_.size()) {
    const std::uint32_t row = a.entries_[i].row;
    std::map<std::uint32_t, double> acc;
    for (; i < a.entries_.size() && a.entries_[i].row == row; ++i) {
      const Entry& ea = a.entries_[i];
      const std::uint32_t brow = a_col_to_b_row[ea.col];
      if (brow == kNoRank) continue;
      for (std::size_t k = b_row_start[brow]; k < b_row_start[brow + 1]; ++k) {
        const Entry& eb = b.entries_[k];
        const double prod = s.times(ea.val, eb.val);
        auto [it, inserted] = acc.emplace(eb.col, prod);
        if (!inserted) it->second = s.plus(it->second, prod);
      }
    }
    for (const auto& [col, v] : acc) {
      if (v != zero) out.push_back({row, col, v});
    }
  }

  AssocArray result(s, a.row_keys_, b.col_keys_, std::move(out));
  result.compact_keys();
  return result;
}

} // namespace hiersparse
