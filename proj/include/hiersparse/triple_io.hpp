#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "hiersparse/assoc_array.hpp"

namespace hiersparse {

/// Shortest decimal that round-trips back to the same double. Locale
/// independent ('.' decimal separator always).
std::string format_double(double v);

/// TSV triple persistence: one "row<TAB>col<TAB>value" line per entry.
/// Keys must not contain tabs or newlines. Written atomically via a temp
/// file renamed into place on close; an unclosed writer leaves nothing.
class TripleWriter {
public:
  explicit TripleWriter(std::string path);
  ~TripleWriter();

  TripleWriter(const TripleWriter&) = delete;
  TripleWriter& operator=(const TripleWriter&) = delete;

  /// Raw triples, duplicates and order preserved.
  void write(const TripleList& t);
  void write(const AssocArray& a);

  /// Flushes and renames into place. No effect on second call.
  void close();

private:
  void write_line(std::string_view row, std::string_view col, double val);

  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool closed_ = false;
};

/// Writes an array's triples; read_triples(write_triples(A)) == A.
void write_triples(const AssocArray& a, const std::string& path);

/// Parses a TSV triple file; duplicate coordinates collapse with plus,
/// exactly like construction. Malformed lines raise ParseError naming
/// the line number.
AssocArray read_triples(const std::string& path, Semiring s);

/// One benchmark batch: identities and rates plus per-layer state.
struct MetricsRow {
  std::uint64_t batch_index = 0;
  std::uint64_t batch_nnz = 0;        ///< updates (edges) submitted this batch
  std::uint64_t cumulative_edges = 0; ///< updates submitted so far
  double batch_seconds = 0.0;         ///< construct + hierarchical update
  double inst_rate = 0.0;             ///< batch_nnz / batch_seconds
  double cum_rate = 0.0;              ///< edges / elapsed update seconds
  std::vector<std::uint64_t> layer_nnz;
  std::vector<std::uint64_t> cascades;
};

inline constexpr std::string_view kMetricsHeader =
    "batch_index,batch_nnz,cumulative_edges,batch_seconds,inst_rate,cum_rate,"
    "layer_nnz,cascades";

/// Plot-ready CSV: optional '#'-prefixed comment lines, the fixed header,
/// one row per batch. layer_nnz and cascades are semicolon-joined lists
/// inside one field each. Atomic (temp file + rename).
void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path,
                   const std::vector<std::string>& comments = {});

} // namespace hiersparse
