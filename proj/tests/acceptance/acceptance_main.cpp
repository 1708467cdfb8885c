// Acceptance gate: one line per criterion, PASS / FAIL / SKIP, with the
// measured evidence inline. Exit status is nonzero iff a criterion FAILs.
//
// The heavyweight criteria (5-7) share desk-scale benchmark runs: the
// many-narrow, 0-cut and few-wide presets each run once on the identical
// stream and their results feed every criterion that needs them.

#include <unistd.h>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hiersparse/bench.hpp"
#include "hiersparse/errors.hpp"
#include "hiersparse/hier_array.hpp"
#include "hiersparse/rmat.hpp"
#include "hiersparse/triple_io.hpp"
#include "test_support.hpp"

using namespace hiersparse;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

bool g_any_failed = false;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int index, const char* status, const std::string& detail) {
  std::printf("[%2d] %-4s %s\n", index, status, detail.c_str());
  std::fflush(stdout);
  if (std::string(status) == "FAIL") g_any_failed = true;
}

// Runs one criterion body; the body returns a detail string on success
// and throws (or calls fail()) on violation.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Body>
void criterion(int index, Body&& body) {
  try {
    report(index, "PASS", body());
  } catch (const Failure& f) {
    report(index, "FAIL", f.what());
  } catch (const std::exception& e) {
    report(index, "FAIL", std::string("unexpected error: ") + e.what());
  }
}

[[noreturn]] void fail(const std::string& msg) { throw Failure(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

void check_time(double elapsed, double limit, const char* what) {
  if (elapsed >= limit) {
    std::ostringstream msg;
    msg << what << " took " << elapsed << "s, limit " << limit << "s";
    fail(msg.str());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---- shared generators for the randomized criteria ---------------------

std::string wide_key(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "v%04zu", i);
  return buf;
}

TripleList random_triples(std::mt19937_64& rng, const Semiring& s,
                          std::size_t nnz, std::size_t universe) {
  std::uniform_int_distribution<std::size_t> key(0, universe - 1);
  TripleList t;
  for (std::size_t i = 0; i < nnz; ++i) {
    t.push_back(wide_key(key(rng)), wide_key(key(rng)),
                testsup::random_value(rng, s));
  }
  return t;
}

CutSpec random_cuts(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> layers(0, 4);
  const int n = layers(rng);
  std::vector<std::uint64_t> cuts;
  std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(50, 800)(rng);
  for (int i = 0; i < n; ++i) {
    cuts.push_back(c);
    c *= std::uniform_int_distribution<std::uint64_t>(2, 8)(rng);
  }
  return CutSpec(cuts);
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    std::ostringstream name;
    name << "hiersparse_accept_" << tag << '_' << ::getpid();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// ---- desk-scale benchmark runs shared by criteria 5-7 -------------------

BenchConfig desk_config(const char* cuts_label) {
  BenchConfig cfg;
  cfg.rmat.scale = 22;
  cfg.rmat.total_edges = 10'000'000;
  cfg.rmat.batch_size = 100'000;
  cfg.rmat.seed = 1;
  cfg.cuts = resolve_cuts(cuts_label);
  cfg.cuts_label = cuts_label;
  return cfg;
}

struct DeskRuns {
  InstanceResult many_narrow;
  InstanceResult none;
  InstanceResult few_wide;
  double many_narrow_elapsed = 0;
  double none_elapsed = 0;
  double few_wide_elapsed = 0;
  bool many_narrow_ok = false;
  bool none_ok = false;
  bool few_wide_ok = false;
  std::string error;
};

InstanceResult desk_run(const char* label, double* elapsed) {
  const auto t0 = Clock::now();
  RunReport rep = run_single(desk_config(label));
  *elapsed = seconds_since(t0);
  return std::move(rep.instances[0]);
}

} // namespace

// ---- criteria ----------------------------------------------------------

namespace {

std::string criterion_1_algebra_laws() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xc1);
  std::uint64_t checks = 0;
  for (const Semiring& s : testsup::all_semirings()) {
    const AssocArray empty(s);
    const bool storable_one = std::isfinite(s.one());
    for (int trial = 0; trial < 500; ++trial) {
      const AssocArray a = testsup::random_array(rng, s, 20, 80);
      const AssocArray b = testsup::random_array(rng, s, 20, 80);
      const AssocArray c = testsup::random_array(rng, s, 20, 80);
      auto law = [&](bool ok, const char* name) {
        ++checks;
        if (!ok) {
          std::ostringstream msg;
          msg << "algebra law '" << name << "' failed for " << s.name()
              << " at trial " << trial;
          fail(msg.str());
        }
      };
      using testsup::arrays_match;
      law(arrays_match(ew_add(a, b), ew_add(b, a)), "ew_add commutativity");
      law(arrays_match(ew_add(ew_add(a, b), c), ew_add(a, ew_add(b, c))),
          "ew_add associativity");
      law(arrays_match(ew_mult(a, b), ew_mult(b, a)),
          "ew_mult commutativity");
      law(arrays_match(ew_mult(ew_mult(a, b), c), ew_mult(a, ew_mult(b, c))),
          "ew_mult associativity");
      law(arrays_match(array_mult(array_mult(a, b), c),
                       array_mult(a, array_mult(b, c))),
          "array_mult associativity");
      law(arrays_match(ew_mult(a, ew_add(b, c)),
                       ew_add(ew_mult(a, b), ew_mult(a, c))),
          "ew_mult distributivity");
      law(arrays_match(array_mult(a, ew_add(b, c)),
                       ew_add(array_mult(a, b), array_mult(a, c))),
          "array_mult left distributivity");
      law(arrays_match(array_mult(ew_add(a, b), c),
                       ew_add(array_mult(a, c), array_mult(b, c))),
          "array_mult right distributivity");
      law(ew_add(a, empty) == a, "additive identity");
      law(ew_mult(a, empty).empty(), "ew_mult annihilator");
      law(array_mult(a, empty).empty(), "array_mult annihilator");
      if (storable_one) {
        const AssocArray right = AssocArray::identity_from_keys(
            a.col_keys().keys(), a.col_keys().keys(), s);
        const AssocArray left = AssocArray::identity_from_keys(
            a.row_keys().keys(), a.row_keys().keys(), s);
        law(arrays_match(array_mult(a, right), a), "right identity");
        law(arrays_match(array_mult(left, a), a), "left identity");
        law(arrays_match(ew_mult(a, testsup::ones_on_support(a)), a),
            "ones-on-support identity");
      }
    }
  }
  const double elapsed = seconds_since(t0);
  check_time(elapsed, 60.0, "algebra law suite");
  std::ostringstream out;
  out << "algebra laws: 7 semirings x 500 triples, " << checks << " checks ("
      << fmt(elapsed) << "s / limit 60s)";
  return out.str();
}

std::string criterion_2_mult_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xc2);
  const auto semirings = testsup::all_semirings();
  for (int trial = 0; trial < 200; ++trial) {
    const Semiring& s = semirings[trial % semirings.size()];
    const AssocArray a = testsup::random_array(rng, s, 10, 40);
    const AssocArray b = testsup::random_array(rng, s, 10, 40);
    const AssocArray fast = array_mult(a, b);
    const AssocArray slow = testsup::oracle_mult(a, b);
    if (!(fast == slow)) {
      std::ostringstream msg;
      msg << "array_mult diverges from dense brute force for " << s.name()
          << " at trial " << trial << " (nnz " << fast.nnz() << " vs "
          << slow.nnz() << ")";
      fail(msg.str());
    }
  }
  const double elapsed = seconds_since(t0);
  check_time(elapsed, 10.0, "multiply oracle");
  std::ostringstream out;
  out << "array-multiply oracle: 200 arrays <=10x10, exact match ("
      << fmt(elapsed) << "s / limit 10s)";
  return out.str();
}

std::string criterion_3_hier_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xc3);
  const Semiring s = Semiring::named("plus_times");
  std::uint64_t total_nnz = 0;
  for (int pair = 0; pair < 100; ++pair) {
    const CutSpec cuts = random_cuts(rng);
    HierArray hier(cuts, s);
    AssocArray fold(s);
    const int batches = std::uniform_int_distribution<int>(1, 20)(rng);
    for (int i = 0; i < batches; ++i) {
      const std::size_t nnz =
          std::uniform_int_distribution<std::size_t>(0, 900)(rng);
      const AssocArray batch =
          AssocArray::build(random_triples(rng, s, nnz, 1500), s);
      total_nnz += batch.nnz();
      hier.update(batch);
      fold = ew_add(fold, batch);
    }
    if (!(hier.flush() == fold)) {
      std::ostringstream msg;
      msg << "flush != flat fold at pair " << pair << " (cuts "
          << cuts.to_string() << ", " << batches << " batches)";
      fail(msg.str());
    }
  }
  const double elapsed = seconds_since(t0);
  check_time(elapsed, 60.0, "hierarchical equivalence");
  std::ostringstream out;
  out << "hierarchical equivalence: 100 stream/CutSpec pairs, "
      << total_nnz << " entries, flush == flat fold (" << fmt(elapsed)
      << "s / limit 60s)";
  return out.str();
}

std::string criterion_4_layer_bound() {
  std::mt19937_64 rng(0xc4);
  const Semiring s = Semiring::named("plus_times");
  std::uint64_t updates = 0;
  for (int round = 0; round < 40; ++round) {
    const CutSpec cuts = random_cuts(rng);
    HierArray hier(cuts, s);
    const int batches = std::uniform_int_distribution<int>(1, 15)(rng);
    for (int i = 0; i < batches; ++i) {
      const std::size_t nnz =
          std::uniform_int_distribution<std::size_t>(0, 1200)(rng);
      hier.update(AssocArray::build(random_triples(rng, s, nnz, 1500), s));
      ++updates;
      for (std::size_t l = 0; l + 1 < hier.layer_count(); ++l) {
        if (hier.layer(l).nnz() > cuts[l]) {
          std::ostringstream msg;
          msg << "layer " << l + 1 << " holds " << hier.layer(l).nnz()
              << " > cut " << cuts[l] << " after update " << updates;
          fail(msg.str());
        }
      }
    }
  }
  // And through the benchmark path: every reported row must respect the
  // cuts (debug builds additionally assert this inside hier_update).
  BenchConfig cfg;
  cfg.rmat.scale = 12;
  cfg.rmat.total_edges = 100'000;
  cfg.rmat.batch_size = 5'000;
  cfg.cuts = CutSpec({1000, 8000});
  cfg.cuts_label = "1000,8000";
  const RunReport rep = run_single(cfg);
  for (const MetricsRow& row : rep.instances[0].rows) {
    for (std::size_t l = 0; l + 1 < row.layer_nnz.size(); ++l) {
      if (row.layer_nnz[l] > cfg.cuts[l]) {
        std::ostringstream msg;
        msg << "benchmark row " << row.batch_index << ": layer " << l + 1
            << " holds " << row.layer_nnz[l] << " > cut " << cfg.cuts[l];
        fail(msg.str());
      }
    }
    ++updates;
  }
  std::ostringstream out;
  out << "layer bound: nnz(A_i) <= c_i after all " << updates
      << " updates (release-mode checks; debug builds assert in hier_update)";
  return out.str();
}

std::string criterion_5_single_floor(const DeskRuns& runs) {
  if (!runs.many_narrow_ok) fail("desk-scale run failed: " + runs.error);
  check_time(runs.many_narrow_elapsed, 600.0, "desk-scale single run");
  const double rate = runs.many_narrow.cum_rate;
  if (!(rate > 40'000.0)) {
    std::ostringstream msg;
    msg << "cum_rate " << fmt(rate) << " updates/s is not above the 40000 floor";
    fail(msg.str());
  }
  std::ostringstream out;
  out << "single-instance floor: scale 22, 1e7 edges, many-narrow -> cum_rate="
      << fmt(rate) << " updates/s > 40000 (" << fmt(runs.many_narrow_elapsed)
      << "s / limit 600s)";
  return out.str();
}

std::string criterion_6_hierarchy_advantage(const DeskRuns& runs) {
  if (!runs.many_narrow_ok || !runs.none_ok || !runs.few_wide_ok) {
    fail("desk-scale run failed: " + runs.error);
  }
  const double total =
      runs.many_narrow_elapsed + runs.none_elapsed + runs.few_wide_elapsed;
  check_time(total, 1200.0, "hierarchy advantage runs");
  const double none_rate = runs.none.cum_rate;
  const double mn_ratio = runs.many_narrow.cum_rate / none_rate;
  const double fw_ratio = runs.few_wide.cum_rate / none_rate;
  // Same stream, so the flushes must agree in size even at this scale
  // (cheap cross-check; the full nnz verification runs at <= 1e6 edges).
  if (runs.many_narrow.flush_nnz != runs.none.flush_nnz ||
      runs.few_wide.flush_nnz != runs.none.flush_nnz) {
    std::ostringstream msg;
    msg << "flush nnz disagrees across presets: many-narrow "
        << runs.many_narrow.flush_nnz << ", none " << runs.none.flush_nnz
        << ", few-wide " << runs.few_wide.flush_nnz;
    fail(msg.str());
  }
  if (!(mn_ratio >= 2.0)) {
    std::ostringstream msg;
    msg << "many-narrow is only " << fmt(mn_ratio)
        << "x the 0-cut rate, needs >= 2x (many-narrow "
        << fmt(runs.many_narrow.cum_rate) << ", none " << fmt(none_rate)
        << ")";
    fail(msg.str());
  }
  if (!(fw_ratio >= 1.3)) {
    std::ostringstream msg;
    msg << "few-wide is only " << fmt(fw_ratio)
        << "x the 0-cut rate, needs >= 1.3x (few-wide "
        << fmt(runs.few_wide.cum_rate) << ", none " << fmt(none_rate) << ")";
    fail(msg.str());
  }
  std::ostringstream out;
  out << "hierarchy advantage: many-narrow " << fmt(mn_ratio)
      << "x and few-wide " << fmt(fw_ratio) << "x the 0-cut rate ("
      << fmt(none_rate) << " updates/s) on the identical stream ("
      << fmt(total) << "s / limit 1200s)";
  return out.str();
}

std::string criterion_7_decreasing_trend(const DeskRuns& runs) {
  if (!runs.none_ok) fail("desk-scale 0-cut run failed: " + runs.error);
  const double slope = log_log_slope(runs.none.rows);
  if (!(slope < 0.0)) {
    std::ostringstream msg;
    msg << "log-log slope of the 0-cut inst_rate is " << fmt(slope)
        << ", expected negative";
    fail(msg.str());
  }
  std::ostringstream out;
  out << "decreasing 0-cut trend: log-log slope " << fmt(slope)
      << " over " << runs.none.rows.size() << " batches (1e7 edges)";
  return out.str();
}

void criterion_8_scaling() {
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores < 4) {
    // The ratio assertion is meaningless without 4 hardware threads; run
    // the definitional checks at small scale and report SKIP.
    try {
      BenchConfig cfg;
      cfg.rmat.scale = 10;
      cfg.rmat.total_edges = 50'000;
      cfg.rmat.batch_size = 5'000;
      cfg.cuts = resolve_cuts("many-narrow");
      cfg.cuts_label = "many-narrow";
      cfg.instances = 1;
      const RunReport p1 = run_scaling(cfg);
      cfg.instances = 4;
      const RunReport p4 = run_scaling(cfg);
      bool ok = p1.aggregate_rate == p1.instances[0].cum_rate;
      double rate_sum = 0;
      for (const InstanceResult& inst : p4.instances) {
        ok = ok && inst.edges == 50'000;
        rate_sum += inst.cum_rate;
      }
      ok = ok && p4.aggregate_rate <= rate_sum * (1 + 1e-12);
      std::ostringstream out;
      out << "desk-scale scaling: host has " << cores
          << " hardware thread(s) < 4, ratio not assertable; definitional "
             "checks at small scale "
          << (ok ? "passed" : "FAILED")
          << " (P=1 aggregate==cum_rate, conservation, aggregate<=sum)";
      report(8, ok ? "SKIP" : "FAIL", out.str());
    } catch (const std::exception& e) {
      report(8, "FAIL", std::string("small-scale scaling checks errored: ") +
                            e.what());
    }
    return;
  }
  criterion(8, [&]() -> std::string {
    BenchConfig cfg = desk_config("many-narrow");
    cfg.instances = 1;
    const auto t0 = Clock::now();
    const RunReport p1 = run_scaling(cfg);
    cfg.instances = 4;
    const RunReport p4 = run_scaling(cfg);
    const double elapsed = seconds_since(t0);
    const double ratio = p4.aggregate_rate / p1.aggregate_rate;
    if (!(ratio >= 3.0)) {
      std::ostringstream msg;
      msg << "P=4 aggregate is only " << fmt(ratio)
          << "x the P=1 rate on a " << cores << "-core host, needs >= 3x";
      fail(msg.str());
    }
    std::ostringstream out;
    out << "desk-scale scaling: P=4 aggregate " << fmt(p4.aggregate_rate)
        << " = " << fmt(ratio) << "x the P=1 rate on " << cores
        << " cores (" << fmt(elapsed) << "s)";
    return out.str();
  });
}

std::string criterion_9_rmat_sanity() {
  TempDir dir("rmat");
  RmatConfig cfg;
  cfg.scale = 16;
  cfg.total_edges = 1'000'000;
  cfg.batch_size = 100'000;
  cfg.seed = 1;

  const std::string dump_a = (dir.path / "run_a.tsv").string();
  const std::string dump_b = (dir.path / "run_b.tsv").string();
  DegreeAccumulator degrees;
  for (int run = 0; run < 2; ++run) {
    const RmatGenerator gen(cfg);
    TripleWriter writer(run == 0 ? dump_a : dump_b);
    for (std::uint64_t b = 0; b < gen.batch_count(); ++b) {
      const TripleList batch = gen.batch(b);
      writer.write(batch);
      if (run == 0) degrees.add(batch);
    }
    writer.close();
  }

  std::ifstream a(dump_a, std::ios::binary), b(dump_b, std::ios::binary);
  std::ostringstream abuf, bbuf;
  abuf << a.rdbuf();
  bbuf << b.rdbuf();
  require(abuf.str().size() > 0, "triple dump is empty");
  require(abuf.str() == bbuf.str(),
          "two runs of the same config produced different triple dumps");

  const DegreeStats st = degrees.finish();
  const double ratio = double(st.max_out_degree) / st.mean_out_degree;
  if (!(ratio >= 20.0)) {
    std::ostringstream msg;
    msg << "max/mean out-degree ratio " << fmt(ratio)
        << " < 20; degree distribution is not heavy-tailed";
    fail(msg.str());
  }
  std::ostringstream out;
  out << "R-MAT sanity: bit-identical dumps (" << abuf.str().size()
      << " bytes), max/mean degree " << st.max_out_degree << "/"
      << fmt(st.mean_out_degree) << " = " << fmt(ratio) << "x >= 20";
  return out.str();
}

std::string criterion_10_persistence() {
  TempDir dir("io");
  const std::string path = (dir.path / "roundtrip.tsv").string();
  std::mt19937_64 rng(0xc10);
  const auto semirings = testsup::all_semirings();
  int arrays = 0;
  // Collapsed arrays: write/read must reproduce them exactly.
  for (int trial = 0; trial < 600; ++trial, ++arrays) {
    const Semiring& s = semirings[trial % semirings.size()];
    const AssocArray a = testsup::random_array(rng, s, 18, 70);
    write_triples(a, path);
    if (!(read_triples(path, s) == a)) {
      std::ostringstream msg;
      msg << "round trip diverged for " << s.name() << " at trial " << trial;
      fail(msg.str());
    }
  }
  // Raw triple lists with duplicates: reading collapses them exactly the
  // way construction does.
  const Semiring pt = Semiring::named("plus_times");
  for (int trial = 0; trial < 400; ++trial, ++arrays) {
    const std::size_t nnz =
        std::uniform_int_distribution<std::size_t>(0, 120)(rng);
    const TripleList t = random_triples(rng, pt, nnz, 40); // forces repeats
    TripleWriter w(path);
    w.write(t);
    w.close();
    if (!(read_triples(path, pt) == AssocArray::build(t, pt))) {
      std::ostringstream msg;
      msg << "duplicate collapse diverged from construction at trial "
          << trial;
      fail(msg.str());
    }
  }
  std::ostringstream out;
  out << "persistence round-trip: " << arrays
      << " arrays survive write/read modulo duplicate collapse";
  return out.str();
}

} // namespace

int main() {
  std::printf("acceptance: hypersparse hierarchical streaming arrays\n");

  criterion(1, criterion_1_algebra_laws);
  criterion(2, criterion_2_mult_oracle);
  criterion(3, criterion_3_hier_equivalence);
  criterion(4, criterion_4_layer_bound);

  // One desk-scale run per preset, shared by criteria 5-7.
  DeskRuns runs;
  try {
    runs.many_narrow = desk_run("many-narrow", &runs.many_narrow_elapsed);
    runs.many_narrow_ok = true;
    runs.none = desk_run("none", &runs.none_elapsed);
    runs.none_ok = true;
    runs.few_wide = desk_run("few-wide", &runs.few_wide_elapsed);
    runs.few_wide_ok = true;
  } catch (const std::exception& e) {
    runs.error = e.what();
  }

  criterion(5, [&] { return criterion_5_single_floor(runs); });
  criterion(6, [&] { return criterion_6_hierarchy_advantage(runs); });
  criterion(7, [&] { return criterion_7_decreasing_trend(runs); });
  criterion_8_scaling();
  criterion(9, criterion_9_rmat_sanity);
  criterion(10, criterion_10_persistence);

  if (g_any_failed) {
    std::printf("acceptance: FAILURES present\n");
    return 1;
  }
  std::printf("acceptance: all criteria passed (8 may be SKIP on small hosts)\n");
  return 0;
}
