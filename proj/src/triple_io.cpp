#include "hiersparse/triple_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hiersparse/errors.hpp"

namespace hiersparse {

namespace {

void check_key_writable(std::string_view key) {
  if (key.find('\t') != std::string_view::npos ||
      key.find('\n') != std::string_view::npos) {
    std::ostringstream msg;
    msg << "key '" << key << "' contains a tab or newline and cannot be "
        << "written as TSV";
    throw DomainError(msg.str());
  }
}

std::string join_u64(const std::vector<std::uint64_t>& vals) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out << ';';
    out << vals[i];
  }
  return out.str();
}

} // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

TripleWriter::TripleWriter(std::string path)
    : path_(std::move(path)), tmp_path_(path_ + ".tmp") {
  out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw IoError("cannot open '" + tmp_path_ + "' for writing");
  }
}

TripleWriter::~TripleWriter() {
  if (!closed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_path_, ec);
  }
}

void TripleWriter::write_line(std::string_view row, std::string_view col,
                              double val) {
  check_key_writable(row);
  check_key_writable(col);
  out_ << row << '\t' << col << '\t' << format_double(val) << '\n';
}

void TripleWriter::write(const TripleList& t) {
  if (!t.well_formed()) {
    throw DomainError("malformed triples: rows/cols/vals lengths differ");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    write_line(t.rows[i], t.cols[i], t.vals[i]);
  }
}

void TripleWriter::write(const AssocArray& a) {
  a.for_each([this](const std::string& row, const std::string& col,
                    double val) { write_line(row, col, val); });
}

void TripleWriter::close() {
  if (closed_) return;
  out_.flush();
  if (!out_) {
    throw IoError("write failed for '" + tmp_path_ + "'");
  }
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_path_, path_, ec);
  if (ec) {
    throw IoError("cannot move '" + tmp_path_ + "' to '" + path_ + "': " +
                  ec.message());
  }
  closed_ = true;
}

void write_triples(const AssocArray& a, const std::string& path) {
  TripleWriter w(path);
  w.write(a);
  w.close();
}

AssocArray read_triples(const std::string& path, Semiring s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  TripleList t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fail = [&](const char* what) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": " << what;
      throw ParseError(msg.str());
    };
    const std::size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos) fail("expected 3 tab-separated fields");
    const std::size_t tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) fail("expected 3 tab-separated fields");
    if (line.find('\t', tab2 + 1) != std::string::npos) {
      fail("too many fields (embedded tab?)");
    }
    const char* vbegin = line.data() + tab2 + 1;
    const char* vend = line.data() + line.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(vbegin, vend, value);
    if (ec != std::errc() || ptr != vend || vbegin == vend) {
      fail("value column is not a decimal number");
    }
    if (!std::isfinite(value)) {
      fail("value column is not finite");
    }
    t.push_back(line.substr(0, tab1), line.substr(tab1 + 1, tab2 - tab1 - 1),
                value);
  }
  if (in.bad()) {
    throw IoError("read failed for '" + path + "'");
  }
  return AssocArray::build(t, s);
}

void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path,
                   const std::vector<std::string>& comments) {
  const std::string tmp = path + ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + tmp + "' for writing");
  }
  for (const std::string& c : comments) {
    out << "# " << c << '\n';
  }
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.batch_index << ',' << r.batch_nnz << ',' << r.cumulative_edges
        << ',' << format_double(r.batch_seconds) << ','
        << format_double(r.inst_rate) << ',' << format_double(r.cum_rate)
        << ',' << join_u64(r.layer_nnz) << ',' << join_u64(r.cascades) << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + tmp + "'");
  }
  out.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move '" + tmp + "' to '" + path + "': " +
                  ec.message());
  }
}

} // namespace hiersparse
