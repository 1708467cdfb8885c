#include "hiersparse/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "hiersparse/errors.hpp"

namespace hiersparse {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

double safe_rate(std::uint64_t count, double seconds) {
  return double(count) / std::max(seconds, 1e-12);
}

std::string join_u64(const std::vector<std::uint64_t>& vals, char sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out << sep;
    out << vals[i];
  }
  return out.str();
}

std::string hostname() {
  char buf[256] = {};
  if (gethostname(buf, sizeof(buf) - 1) != 0) return "unknown";
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + tmp + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for '" + tmp + "'");
  out.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move '" + tmp + "' to '" + path + "': " +
                  ec.message());
  }
}

/// The timed worker. Generation and (optional) edge dumping happen
/// outside the construct+update timing window.
InstanceResult run_instance(const BenchConfig& cfg, std::uint32_t instance) {
  RmatConfig rc = cfg.rmat;
  rc.seed = cfg.rmat.seed + instance;
  const RmatGenerator gen(rc);
  const Semiring semiring = Semiring::named(cfg.semiring_name);
  HierArray hier(cfg.cuts, semiring);

  std::unique_ptr<TripleWriter> dump;
  if (instance == 0 && !cfg.dump_triples.empty()) {
    dump = std::make_unique<TripleWriter>(cfg.dump_triples);
  }

  InstanceResult res;
  res.instance = instance;
  res.seed = rc.seed;
  res.rows.reserve(gen.batch_count());

  std::uint64_t cum_edges = 0;
  double cum_seconds = 0.0;
  std::uint64_t warm_edges = 0; // post-warmup
  double warm_seconds = 0.0;

  for (std::uint64_t b = 0; b < gen.batch_count(); ++b) {
    const auto g0 = Clock::now();
    const TripleList batch = gen.batch(b);
    res.gen_seconds += seconds_between(g0, Clock::now());
    if (dump) dump->write(batch);

    const auto t0 = Clock::now();
    const AssocArray arr = AssocArray::build(batch, semiring);
    hier.update(arr);
    const double batch_seconds = seconds_between(t0, Clock::now());

    const std::uint64_t n = batch.size();
    cum_edges += n;
    cum_seconds += batch_seconds;
    if (b >= cfg.warmup_batches) {
      warm_edges += n;
      warm_seconds += batch_seconds;
    }

    MetricsRow row;
    row.batch_index = b;
    row.batch_nnz = n;
    row.cumulative_edges = cum_edges;
    row.batch_seconds = batch_seconds;
    row.inst_rate = safe_rate(n, batch_seconds);
    row.cum_rate = warm_edges > 0 ? safe_rate(warm_edges, warm_seconds)
                                  : safe_rate(cum_edges, cum_seconds);
    row.layer_nnz = hier.layer_nnz();
    row.cascades = hier.cascade_counts();
    res.rows.push_back(std::move(row));
  }
  if (dump) dump->close();

  res.edges = cum_edges;
  res.update_seconds = cum_seconds;
  res.rate_edges = warm_edges > 0 ? warm_edges : cum_edges;
  res.rate_seconds = warm_edges > 0 ? warm_seconds : cum_seconds;
  res.cum_rate = safe_rate(res.rate_edges, res.rate_seconds);
  res.final_layer_nnz = hier.layer_nnz();
  res.cascades = hier.cascade_counts();

  const AssocArray flushed = hier.flush();
  res.flush_nnz = flushed.nnz();

  // Correctness under timing: on small runs, the hierarchy must collapse
  // to exactly what a flat fold of the same stream produces.
  if (cfg.rmat.total_edges <= 1'000'000) {
    AssocArray reference(semiring);
    for (std::uint64_t b = 0; b < gen.batch_count(); ++b) {
      reference = ew_add(reference, AssocArray::build(gen.batch(b), semiring));
    }
    res.flush_checked = true;
    res.reference_flush_nnz = reference.nnz();
    if (res.reference_flush_nnz != res.flush_nnz) {
      std::ostringstream msg;
      msg << "instance " << instance << ": flush nnz " << res.flush_nnz
          << " differs from flat-fold reference " << res.reference_flush_nnz;
      throw AlgebraError(msg.str());
    }
  }
  return res;
}

std::vector<std::string> report_comments(const RunReport& rep) {
  return {rep.config.echo(),
          "host=" + rep.host + " timestamp=" + rep.timestamp};
}

void write_report_files(const RunReport& rep) {
  namespace fs = std::filesystem;
  const fs::path dir(rep.config.out_dir);
  fs::create_directories(dir);

  for (const InstanceResult& inst : rep.instances) {
    std::vector<std::string> comments = report_comments(rep);
    comments.push_back("instance=" + std::to_string(inst.instance) +
                       " seed=" + std::to_string(inst.seed));
    const fs::path path =
        dir / ("instance_" + std::to_string(inst.instance) + "_metrics.csv");
    write_metrics(inst.rows, path.string(), comments);
  }

  std::ostringstream out;
  for (const std::string& c : report_comments(rep)) out << "# " << c << '\n';
  out << "# aggregate_rate=" << format_double(rep.aggregate_rate) << '\n';
  out << "instance,seed,edges,batches,gen_seconds,update_seconds,"
         "rate_edges,rate_seconds,cum_rate,flush_nnz,flush_checked,"
         "final_layer_nnz,cascades\n";
  for (const InstanceResult& inst : rep.instances) {
    out << inst.instance << ',' << inst.seed << ',' << inst.edges << ','
        << inst.rows.size() << ',' << format_double(inst.gen_seconds) << ','
        << format_double(inst.update_seconds) << ',' << inst.rate_edges << ','
        << format_double(inst.rate_seconds) << ','
        << format_double(inst.cum_rate) << ',' << inst.flush_nnz << ','
        << (inst.flush_checked ? 1 : 0) << ','
        << join_u64(inst.final_layer_nnz, ';') << ','
        << join_u64(inst.cascades, ';') << '\n';
  }
  write_text_atomic((dir / "summary.csv").string(), out.str());
}

RunReport run_report(const BenchConfig& cfg) {
  cfg.validate();
  // Output locations must exist before any worker opens a file.
  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
  if (!cfg.dump_triples.empty()) {
    const auto parent = std::filesystem::path(cfg.dump_triples).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
  }
  RunReport rep;
  rep.config = cfg;
  rep.host = hostname();
  rep.timestamp = utc_timestamp();

  const std::uint32_t p = cfg.instances;
  rep.instances.resize(p);
  if (p == 1) {
    rep.instances[0] = run_instance(cfg, 0);
  } else {
    std::vector<std::exception_ptr> errors(p);
    std::vector<std::thread> workers;
    workers.reserve(p);
    for (std::uint32_t i = 0; i < p; ++i) {
      workers.emplace_back([&cfg, &rep, &errors, i] {
        try {
          rep.instances[i] = run_instance(cfg, i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::uint64_t total_edges = 0;
  double slowest = 0.0;
  for (const InstanceResult& inst : rep.instances) {
    total_edges += inst.rate_edges;
    slowest = std::max(slowest, inst.rate_seconds);
  }
  rep.aggregate_rate = safe_rate(total_edges, slowest);

  if (!cfg.out_dir.empty()) write_report_files(rep);
  return rep;
}

} // namespace

CutSpec resolve_cuts(std::string_view text) {
  if (text.empty() || text == "none") return CutSpec();
  if (text == "few-wide") {
    return CutSpec({std::uint64_t(1) << 17, std::uint64_t(1) << 23});
  }
  if (text == "many-narrow") {
    return CutSpec({std::uint64_t(1) << 13, std::uint64_t(1) << 16,
                    std::uint64_t(1) << 19, std::uint64_t(1) << 22});
  }
  return CutSpec::parse(text);
}

void BenchConfig::validate() const {
  rmat.validate();
  Semiring::named(semiring_name); // throws ConfigError on unknown names
  if (instances < 1) throw ConfigError("instances must be >= 1");
}

std::string BenchConfig::echo() const {
  std::ostringstream out;
  out << "scale=" << rmat.scale << " edges=" << rmat.total_edges
      << " batch=" << rmat.batch_size << " seed=" << rmat.seed << " probs=";
  for (std::size_t i = 0; i < rmat.probs.size(); ++i) {
    if (i > 0) out << ';';
    out << format_double(rmat.probs[i]);
  }
  out << " semiring=" << semiring_name << " cuts=" << cuts_label << '('
      << join_u64(cuts.values(), ';') << ')' << " instances=" << instances
      << " warmup=" << warmup_batches;
  return out.str();
}

RunReport run_single(const BenchConfig& cfg) {
  if (cfg.instances != 1) {
    throw ConfigError("run_single requires instances=1 (use scaling mode)");
  }
  return run_report(cfg);
}

RunReport run_scaling(const BenchConfig& cfg) { return run_report(cfg); }

std::vector<SweepRow> run_sweep(const BenchConfig& base,
                                const std::vector<std::string>& cut_specs) {
  if (cut_specs.size() < 2) {
    throw ConfigError("sweep needs at least 2 cut configurations, got " +
                      std::to_string(cut_specs.size()));
  }
  std::vector<SweepRow> rows;
  std::vector<std::vector<std::string>> comment_blocks;
  std::vector<std::vector<MetricsRow>> metric_blocks;
  for (const std::string& spec : cut_specs) {
    BenchConfig cfg = base;
    cfg.instances = 1;
    cfg.cuts = resolve_cuts(spec);
    cfg.cuts_label = spec.empty() ? "none" : spec;
    cfg.out_dir.clear();      // sweep owns the output layout
    cfg.dump_triples.clear(); // identical stream; one dump would repeat
    const RunReport rep = run_report(cfg);
    const InstanceResult& inst = rep.instances[0];

    SweepRow row;
    row.label = cfg.cuts_label;
    row.cuts = join_u64(cfg.cuts.values(), ';');
    row.final_cum_rate = inst.cum_rate;
    row.min_inst_rate = inst.rows.empty() ? 0.0 : inst.rows[0].inst_rate;
    row.max_inst_rate = row.min_inst_rate;
    for (const MetricsRow& r : inst.rows) {
      row.min_inst_rate = std::min(row.min_inst_rate, r.inst_rate);
      row.max_inst_rate = std::max(row.max_inst_rate, r.inst_rate);
    }
    row.cascades = inst.cascades;
    row.flush_nnz = inst.flush_nnz;
    rows.push_back(row);

    std::vector<std::string> comments = report_comments(rep);
    comments.push_back("sweep_spec=" + row.label);
    comment_blocks.push_back(std::move(comments));
    metric_blocks.push_back(inst.rows);
  }

  if (!base.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(base.out_dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const fs::path path =
          dir / ("sweep_" + std::to_string(i) + "_metrics.csv");
      write_metrics(metric_blocks[i], path.string(), comment_blocks[i]);
    }
    std::ostringstream out;
    out << "# " << base.echo() << '\n';
    out << "# host=" << hostname() << " timestamp=" << utc_timestamp() << '\n';
    out << "label,cuts,final_cum_rate,min_inst_rate,max_inst_rate,cascades,"
           "flush_nnz\n";
    for (const SweepRow& r : rows) {
      std::string label = r.label; // literal cut lists carry commas
      std::replace(label.begin(), label.end(), ',', ';');
      out << label << ',' << r.cuts << ',' << format_double(r.final_cum_rate)
          << ',' << format_double(r.min_inst_rate) << ','
          << format_double(r.max_inst_rate) << ',' << join_u64(r.cascades, ';')
          << ',' << r.flush_nnz << '\n';
    }
    write_text_atomic((dir / "sweep.csv").string(), out.str());
  }
  return rows;
}

double log_log_slope(const std::vector<MetricsRow>& rows) {
  // Least squares on (x, y) = (log cumulative_edges, log inst_rate).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const MetricsRow& r : rows) {
    if (r.cumulative_edges == 0 || r.inst_rate <= 0.0) continue;
    const double x = std::log(double(r.cumulative_edges));
    const double y = std::log(r.inst_rate);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = double(n) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (double(n) * sxy - sx * sy) / denom;
}

} // namespace hiersparse
