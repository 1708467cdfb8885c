// Streaming-update benchmark driver.
//
//   bench single   one stream, one hierarchy, per-batch metrics
//   bench scaling  P share-nothing instances, aggregate rate
//   bench sweep    one stream, several cut configurations compared

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hiersparse/bench.hpp"
#include "hiersparse/errors.hpp"

namespace {

struct CliOptions {
  std::uint32_t scale = 22;
  std::uint64_t edges = 10'000'000;
  std::uint64_t batch = 100'000;
  std::uint64_t seed = 1;
  std::vector<double> probs = {0.57, 0.19, 0.19, 0.05};
  std::string semiring = "plus_times";
  std::string cuts = "many-narrow";
  std::uint32_t layers = 0;
  std::uint32_t instances = 4;
  std::uint64_t warmup = 2;
  std::string out = "bench_out";
  std::string dump;
  std::vector<std::string> sweep_cuts;
};

void add_stream_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--scale", o.scale, "log2 of the vertex-id space")
      ->capture_default_str();
  cmd->add_option("--edges", o.edges, "edges per instance")
      ->capture_default_str();
  cmd->add_option("--batch", o.batch, "edges per update batch")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "stream seed (instance i uses seed+i)")
      ->capture_default_str();
  cmd->add_option("--probs", o.probs,
                  "R-MAT quadrant probabilities a b c d (sum to 1)")
      ->expected(4);
  cmd->add_option("--semiring", o.semiring, "value algebra by name")
      ->capture_default_str();
  cmd->add_option("--warmup", o.warmup,
                  "leading batches excluded from cum_rate")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "directory for CSV output ('' = none)")
      ->capture_default_str();
  cmd->add_option("--dump-triples", o.dump,
                  "also write instance 0's raw edge stream as TSV");
}

void add_cut_flags(CLI::App* cmd, CliOptions& o) {
  auto* cuts = cmd->add_option(
      "--cuts", o.cuts, "cut list (e.g. 8192,262144) or preset: none | "
                        "few-wide | many-narrow");
  cuts->capture_default_str();
  auto* layers = cmd->add_option(
      "--layers", o.layers, "use the geometric default cuts for N layers");
  cuts->excludes(layers);
  layers->excludes(cuts);
}

hiersparse::BenchConfig to_config(const CliOptions& o) {
  hiersparse::BenchConfig cfg;
  cfg.rmat.scale = o.scale;
  cfg.rmat.total_edges = o.edges;
  cfg.rmat.batch_size = o.batch;
  cfg.rmat.seed = o.seed;
  for (std::size_t i = 0; i < 4; ++i) cfg.rmat.probs[i] = o.probs[i];
  if (o.layers > 0) {
    cfg.cuts = hiersparse::CutSpec::geometric(o.layers);
    cfg.cuts_label = "geometric-" + std::to_string(o.layers);
  } else {
    cfg.cuts = hiersparse::resolve_cuts(o.cuts);
    cfg.cuts_label = o.cuts.empty() ? "none" : o.cuts;
  }
  cfg.semiring_name = o.semiring;
  cfg.warmup_batches = o.warmup;
  cfg.out_dir = o.out;
  cfg.dump_triples = o.dump;
  return cfg;
}

void print_report(const hiersparse::RunReport& rep) {
  using hiersparse::format_double;
  std::cout << "# " << rep.config.echo() << "\n";
  for (const hiersparse::InstanceResult& inst : rep.instances) {
    std::cout << "instance " << inst.instance << ": edges=" << inst.edges
              << " update_seconds=" << format_double(inst.update_seconds)
              << " cum_rate=" << format_double(inst.cum_rate)
              << " flush_nnz=" << inst.flush_nnz;
    if (inst.flush_checked) std::cout << " (flush verified)";
    std::cout << "\n";
  }
  if (rep.instances.size() > 1) {
    std::cout << "aggregate_rate=" << format_double(rep.aggregate_rate)
              << " updates/second over " << rep.instances.size()
              << " instances\n";
  }
  if (!rep.config.out_dir.empty()) {
    std::cout << "metrics written under " << rep.config.out_dir << "/\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypersparse hierarchical streaming-update benchmark"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  CliOptions o;

  CLI::App* single = app.add_subcommand(
      "single", "one stream through one hierarchical array");
  add_stream_flags(single, o);
  add_cut_flags(single, o);

  CLI::App* scaling = app.add_subcommand(
      "scaling", "P independent instances updated concurrently");
  add_stream_flags(scaling, o);
  add_cut_flags(scaling, o);
  scaling->add_option("--instances", o.instances, "worker count P")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "compare cut configurations on the identical stream");
  add_stream_flags(sweep, o);
  sweep->add_option("--cuts", o.sweep_cuts,
                    "cut spec per run, repeatable (default: none few-wide "
                    "many-narrow)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(single)) {
      hiersparse::BenchConfig cfg = to_config(o);
      cfg.instances = 1;
      print_report(hiersparse::run_single(cfg));
    } else if (app.got_subcommand(scaling)) {
      hiersparse::BenchConfig cfg = to_config(o);
      cfg.instances = o.instances;
      print_report(hiersparse::run_scaling(cfg));
    } else {
      hiersparse::BenchConfig cfg = to_config(o);
      cfg.instances = 1;
      std::vector<std::string> specs = o.sweep_cuts;
      if (specs.empty()) specs = {"none", "few-wide", "many-narrow"};
      const auto rows = hiersparse::run_sweep(cfg, specs);
      std::cout << "# " << cfg.echo() << "\n";
      std::cout << "label\tcuts\tfinal_cum_rate\tmin_inst_rate\t"
                   "max_inst_rate\tflush_nnz\n";
      for (const hiersparse::SweepRow& r : rows) {
        std::cout << r.label << '\t' << (r.cuts.empty() ? "-" : r.cuts) << '\t'
                  << hiersparse::format_double(r.final_cum_rate) << '\t'
                  << hiersparse::format_double(r.min_inst_rate) << '\t'
                  << hiersparse::format_double(r.max_inst_rate) << '\t'
                  << r.flush_nnz << "\n";
      }
      if (!cfg.out_dir.empty()) {
        std::cout << "sweep table written under " << cfg.out_dir << "/\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "bench: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
