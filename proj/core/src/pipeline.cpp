#include "thermagrid/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "serialization_detail.hpp"

namespace thermagrid {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!(cfg.box.lx > 0.0) || !(cfg.box.ly > 0.0) || !(cfg.box.lz > 0.0)) {
    throw ValidationError("box.dims: required, all dimensions > 0");
  }
  if (!is_finite(cfg.box.origin)) {
    throw ValidationError("box.origin: coordinates must be finite");
  }
  if (!cfg.source_config && !cfg.explicit_sources) {
    throw ValidationError("sources: required (give count/strength_range/seed or an explicit list)");
  }
  if (cfg.source_config && cfg.explicit_sources) {
    throw ValidationError("sources: give either a random config or an explicit list, not both");
  }
  if (cfg.source_config) {
    if (cfg.source_config->count < 1) {
      throw ValidationError("sources.count: must be >= 1");
    }
    if (!(cfg.source_config->strength_min > 0.0) ||
        !(cfg.source_config->strength_min <= cfg.source_config->strength_max)) {
      throw ValidationError("sources.strength_range: need 0 < Qmin <= Qmax");
    }
  }
  if (cfg.explicit_sources) {
    if (cfg.explicit_sources->empty()) {
      throw ValidationError("sources.explicit: must contain at least one source");
    }
    for (std::size_t i = 0; i < cfg.explicit_sources->size(); ++i) {
      const HeatSource& s = (*cfg.explicit_sources)[i];
      if (!(s.strength > 0.0) || !std::isfinite(s.strength)) {
        throw ValidationError("sources.explicit[" + std::to_string(i) +
                              "].strength: must be finite and > 0");
      }
      if (!contains(cfg.box, s.position)) {
        throw ValidationError("sources.explicit[" + std::to_string(i) +
                              "].position: outside the box");
      }
    }
  }
  if (cfg.layers && cfg.layers->layers.empty()) {
    throw ValidationError("layers: must contain at least one layer when present");
  }
  if (cfg.mesh.fine_resolution < 1) {
    throw ValidationError("mesh.fine_resolution: must be >= 1");
  }
  if (!(cfg.mesh.fine_extent > 0.0)) {
    throw ValidationError("mesh.fine_extent: must be > 0");
  }
  for (int d : cfg.mesh.coarse_divisions) {
    if (d < 1) {
      throw ValidationError("mesh.coarse_divisions: all division counts must be >= 1");
    }
  }
  if (cfg.hotspot.top_k < 0) {
    throw ValidationError("hotspot.top_k: must be >= 0");
  }
  if (cfg.hotspot.threshold_override && !(*cfg.hotspot.threshold_override > 0.0)) {
    throw ValidationError("hotspot.threshold_override: must be > 0");
  }
  if (cfg.relocation.cap_per_source < 1) {
    throw ValidationError("relocation.cap_per_source: must be >= 1");
  }
  if (cfg.relocation.iterations < 1) {
    throw ValidationError("relocation.iterations: must be >= 1");
  }
}

RunArtifact run_simulation(const RunConfig& cfg) {
  validate_config(cfg);

  RunArtifact artifact;
  artifact.config = cfg;

  Stopwatch total;
  Stopwatch sw;
  artifact.sources = cfg.explicit_sources ? *cfg.explicit_sources
                                          : generate_sources(*cfg.source_config, cfg.box);
  artifact.timings.push_back({"generate_sources", sw.seconds()});

  sw = Stopwatch();
  auto probes =
      std::make_shared<const ProbeSet>(assemble_probes(artifact.sources, cfg.mesh, cfg.box));
  artifact.timings.push_back({"assemble_probes", sw.seconds()});

  sw = Stopwatch();
  ThermalField field = compute_field(probes, artifact.sources);
  artifact.timings.push_back({"compute_field", sw.seconds()});

  sw = Stopwatch();
  const double threshold =
      cfg.hotspot.threshold_override.value_or(compute_threshold(field));
  artifact.report = detect_hotspots(field, threshold, cfg.hotspot.top_k);
  ExcessField excess = compute_excess(field, threshold);
  artifact.timings.push_back({"detect_hotspots", sw.seconds()});

  if (cfg.relocation.enabled) {
    sw = Stopwatch();
    std::vector<HeatSource> moved = artifact.sources;
    ThermalField current = field;
    for (int it = 0; it < cfg.relocation.iterations; ++it) {
      // Eligibility always works off the standard threshold of the current
      // field; an override affects detection and excess reporting only.
      const double t_std = compute_threshold(current);
      const ExcessField e_std = compute_excess(current, t_std);
      CandidateSet candidates = eligible_targets(e_std, current);
      if (!cfg.relocation.disable_pruning) {
        candidates = prune_candidates(candidates, moved,
                                      static_cast<std::size_t>(cfg.relocation.cap_per_source));
      } else if (moved.size() * candidates.targets.size() > 100'000'000) {
        throw ValidationError(
            "relocation.disable_pruning: " + std::to_string(moved.size()) + " sources x " +
            std::to_string(candidates.targets.size()) +
            " targets is too large for an exact dense solve; use cap_per_source");
      }
      if (candidates.targets.size() < moved.size()) {
        throw InfeasibleMatchingError(
            "no perfect matching on the source side: " +
            std::to_string(candidates.targets.size()) + " eligible targets for " +
            std::to_string(moved.size()) + " sources");
      }
      const CostMatrix costs = build_cost_matrix(moved, candidates);
      RelocationPlan plan = min_weight_matching(costs, moved, candidates);
      moved = apply_relocation(moved, plan);
      artifact.plans.push_back(std::move(plan));

      auto probes_after =
          std::make_shared<const ProbeSet>(assemble_probes(moved, cfg.mesh, cfg.box));
      current = compute_field(probes_after, moved);
    }
    artifact.metrics = evaluate_plan(field, current);
    artifact.timings.push_back({"relocation", sw.seconds()});
  }

  sw = Stopwatch();
  emit_reports(artifact, cfg.output, &field, &excess);
  artifact.timings.push_back({"emit_reports", sw.seconds()});
  artifact.timings.push_back({"total", total.seconds()});
  return artifact;
}

SummaryTable run_sweep(const RunConfig& cfg, const std::vector<int>& counts) {
  validate_config(cfg);
  if (counts.empty()) {
    throw ValidationError("sweep.counts: must be non-empty");
  }
  if (!cfg.source_config) {
    throw ValidationError("sweep: requires a random source config (count/strength_range/seed)");
  }

  std::vector<HotspotReport> reports;
  reports.reserve(counts.size());
  for (std::size_t idx = 0; idx < counts.size(); ++idx) {
    RunConfig sub = cfg;
    sub.source_config->count = counts[idx];
    sub.source_config->seed = cfg.source_config->seed + idx;
    sub.relocation.enabled = false;
    sub.output = OutputOptions{};  // the sweep writes one combined summary
    reports.push_back(run_simulation(sub).report);
  }

  SummaryTable table = summarize(reports);
  if (cfg.output.summary_csv) {
    detail::write_text_file(*cfg.output.summary_csv, table.to_csv());
  }
  return table;
}

void emit_reports(const RunArtifact& artifact, const OutputOptions& output,
                  const ThermalField* field, const ExcessField* excess) {
  if (output.summary_csv) {
    const HotspotReport reports[] = {artifact.report};
    detail::write_text_file(*output.summary_csv, summarize(reports).to_csv());
  }
  if (output.artifact_json) {
    detail::write_text_file(*output.artifact_json,
                            artifact_to_json(artifact, output.emit_timings));
  }
  if (output.plan_json) {
    if (artifact.plans.empty()) {
      throw ValidationError("output.plan_json: run produced no relocation plan");
    }
    detail::write_text_file(*output.plan_json,
                            detail::plan_section_json(artifact.plans, artifact.metrics));
  }
  if (output.probe_dump_csv) {
    if (field == nullptr || excess == nullptr) {
      throw ValidationError(
          "output.probe_dump_csv: per-probe data is only available during a simulation run");
    }
    detail::write_probe_dump(*output.probe_dump_csv, *field, *excess,
                             artifact.config.layers);
  }
}

}  // namespace thermagrid
