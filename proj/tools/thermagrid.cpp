// thermagrid: hotspot simulation and source relocation for 3D chip volumes.
//
// Subcommands:
//   simulate   field evaluation + hotspot detection
//   sweep      one run per source count, combined results table
//   relocate   simulate, then min-cost matching relocation and re-evaluation
//   report     re-emit summary/plan from a stored artifact JSON
//
// Exit codes: 0 success, 1 validation error, 2 infeasible matching, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thermagrid/pipeline.hpp"
#include "thermagrid/threading.hpp"

namespace {

using namespace thermagrid;

struct FlagBag {
  std::optional<std::string> config_path;
  std::vector<double> box_dims;
  std::vector<double> box_origin;
  std::optional<int> sources;
  std::optional<std::uint64_t> seed;
  std::vector<double> strength_range;
  std::optional<int> fine_resolution;
  std::vector<int> coarse_divisions;
  std::optional<double> fine_extent;
  std::optional<int> top_k;
  std::optional<double> threshold;
  std::optional<int> cap_per_source;
  std::optional<int> iterations;
  bool no_prune = false;
  std::optional<std::string> summary;
  std::optional<std::string> artifact;
  std::optional<std::string> probe_dump;
  std::optional<std::string> plan;
  bool timings = false;
};

void add_common_flags(CLI::App* cmd, FlagBag& f, bool with_relocation) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--box-dims", f.box_dims, "Chip dimensions Lx Ly Lz (chip units)")
      ->expected(3);
  cmd->add_option("--box-origin", f.box_origin, "Chip origin x y z")->expected(3);
  cmd->add_option("--sources", f.sources, "Number of random sources");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--strength-range", f.strength_range, "Source strength Qmin Qmax (watts)")
      ->expected(2);
  cmd->add_option("--fine-resolution", f.fine_resolution,
                  "Fine lattice points per axis around each source");
  cmd->add_option("--coarse-divisions", f.coarse_divisions, "Coarse lattice nx ny nz")
      ->expected(3);
  cmd->add_option("--fine-extent", f.fine_extent,
                  "Half-width of the fine cube around each source (chip units)");
  cmd->add_option("--top-k", f.top_k, "Hottest probes to keep in the report");
  cmd->add_option("--threshold", f.threshold,
                  "Hotspot threshold override (default: min source power)");
  if (with_relocation) {
    cmd->add_option("--cap-per-source", f.cap_per_source,
                    "Candidate targets kept per source before matching");
    cmd->add_option("--iterations", f.iterations, "Relocation rounds");
    cmd->add_flag("--no-prune", f.no_prune, "Match against every eligible target");
    cmd->add_option("--plan", f.plan, "Standalone relocation plan JSON path");
  }
  cmd->add_option("--summary", f.summary, "Summary CSV path");
  cmd->add_option("--artifact", f.artifact, "Artifact JSON path");
  cmd->add_option("--probe-dump", f.probe_dump, "Per-probe CSV dump path (large)");
  cmd->add_flag("--timings", f.timings, "Include stage timings in the artifact");
}

CliOverrides to_overrides(const FlagBag& f) {
  CliOverrides o;
  if (f.box_dims.size() == 3) {
    o.box_dims = {f.box_dims[0], f.box_dims[1], f.box_dims[2]};
  }
  if (f.box_origin.size() == 3) {
    o.box_origin = {f.box_origin[0], f.box_origin[1], f.box_origin[2]};
  }
  o.sources = f.sources;
  o.seed = f.seed;
  if (f.strength_range.size() == 2) {
    o.strength_range = {f.strength_range[0], f.strength_range[1]};
  }
  o.fine_resolution = f.fine_resolution;
  if (f.coarse_divisions.size() == 3) {
    o.coarse_divisions = {f.coarse_divisions[0], f.coarse_divisions[1],
                          f.coarse_divisions[2]};
  }
  o.fine_extent = f.fine_extent;
  o.top_k = f.top_k;
  o.threshold_override = f.threshold;
  o.cap_per_source = f.cap_per_source;
  o.iterations = f.iterations;
  if (f.no_prune) {
    o.disable_pruning = true;
  }
  o.summary_csv = f.summary;
  o.artifact_json = f.artifact;
  o.probe_dump_csv = f.probe_dump;
  o.plan_json = f.plan;
  if (f.timings) {
    o.emit_timings = true;
  }
  return o;
}

void print_run(const RunArtifact& a) {
  const HotspotReport& r = a.report;
  std::cout << "sources: " << r.n_sources << "  probes: " << r.total_points << " (fm "
            << r.fm_points << ", cm " << r.cm_points << ")\n"
            << "threshold: " << format_double(r.threshold) << "\n"
            << "hotspots: fm " << r.fm_hotspots << " (" << format_double(r.fm_pct * 100.0)
            << "%), cm " << r.cm_hotspots << " (" << format_double(r.cm_pct * 100.0)
            << "%)\n";
  if (a.config.layers && !r.hottest.empty()) {
    const double wk_eff = effective_conductivity(*a.config.layers);
    std::cout << "wk_eff: " << format_double(wk_eff) << " W/K, hottest probe temperature: "
              << format_double(temperature(r.hottest[0].power, wk_eff)) << "\n";
  }
  if (!a.plans.empty()) {
    double total = 0.0;
    for (const RelocationPlan& p : a.plans) {
      total += p.total_cost;
    }
    std::cout << "relocation: " << a.plans.size() << " round(s), total cost "
              << format_double(total) << "\n";
    if (a.metrics) {
      std::cout << "coarse max power: " << format_double(a.metrics->before.coarse_max_power)
                << " -> " << format_double(a.metrics->after.coarse_max_power) << "\n";
    }
  }
  if (a.config.output.emit_timings) {
    for (const StageTiming& t : a.timings) {
      std::cout << "time[" << t.stage << "]: " << format_double(t.seconds) << " s\n";
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Deterministic 3D chip thermal hotspot simulator"};
  app.require_subcommand(1);

  FlagBag sim_flags, sweep_flags, reloc_flags;
  std::vector<int> counts{5, 10, 20, 40, 50};

  CLI::App* sim = app.add_subcommand("simulate", "Evaluate the field and detect hotspots");
  add_common_flags(sim, sim_flags, false);

  CLI::App* sweep = app.add_subcommand("sweep", "Run the source-count sweep");
  add_common_flags(sweep, sweep_flags, false);
  sweep->add_option("--counts", counts, "Source counts, one run each");

  CLI::App* reloc =
      app.add_subcommand("relocate", "Simulate, then relocate sources to cool targets");
  add_common_flags(reloc, reloc_flags, true);

  CLI::App* report = app.add_subcommand("report", "Re-emit reports from an artifact");
  std::string report_input;
  std::optional<std::string> report_summary, report_plan, report_artifact;
  report->add_option("--input", report_input, "Artifact JSON produced by a previous run")
      ->required();
  report->add_option("--summary", report_summary, "Summary CSV path");
  report->add_option("--plan", report_plan, "Relocation plan JSON path");
  report->add_option("--artifact", report_artifact, "Artifact JSON copy path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) {
    RunConfig cfg = parse_config(sim_flags.config_path, to_overrides(sim_flags));
    cfg.relocation.enabled = false;
    print_run(run_simulation(cfg));
  } else if (sweep->parsed()) {
    RunConfig cfg = parse_config(sweep_flags.config_path, to_overrides(sweep_flags));
    cfg.relocation.enabled = false;
    const SummaryTable table = run_sweep(cfg, counts);
    std::cout << table.to_csv();
  } else if (reloc->parsed()) {
    RunConfig cfg = parse_config(reloc_flags.config_path, to_overrides(reloc_flags));
    cfg.relocation.enabled = true;
    print_run(run_simulation(cfg));
  } else if (report->parsed()) {
    const RunArtifact artifact = load_artifact(report_input);
    OutputOptions out;
    out.summary_csv = report_summary;
    out.plan_json = report_plan;
    out.artifact_json = report_artifact;
    emit_reports(artifact, out);
    print_run(artifact);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleMatchingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
