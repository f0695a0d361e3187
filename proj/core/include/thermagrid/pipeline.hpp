#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "thermagrid/hotspot.hpp"
#include "thermagrid/relocation.hpp"

namespace thermagrid {

struct HotspotOptions {
  int top_k{20};
  std::optional<double> threshold_override;

  friend bool operator==(const HotspotOptions&, const HotspotOptions&) = default;
};

struct RelocationOptions {
  bool enabled{false};
  int cap_per_source{64};
  bool disable_pruning{false};
  int iterations{1};

  friend bool operator==(const RelocationOptions&, const RelocationOptions&) = default;
};

struct OutputOptions {
  std::optional<std::string> summary_csv;
  std::optional<std::string> artifact_json;
  std::optional<std::string> probe_dump_csv;
  std::optional<std::string> plan_json;
  bool emit_timings{false};

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

/// Fully resolved run parameters. Sources come either from a seeded random
/// config or from an explicit list (exactly one of the two).
struct RunConfig {
  Box3 box{};
  std::optional<LayerStack> layers;
  std::optional<SourceConfig> source_config;
  std::optional<std::vector<HeatSource>> explicit_sources;
  MeshSpec mesh{};
  HotspotOptions hotspot{};
  RelocationOptions relocation{};
  OutputOptions output{};

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Flag-level overrides; set fields win over the config file.
struct CliOverrides {
  std::optional<std::array<double, 3>> box_dims;
  std::optional<std::array<double, 3>> box_origin;
  std::optional<int> sources;
  std::optional<std::uint64_t> seed;
  std::optional<std::array<double, 2>> strength_range;
  std::optional<int> fine_resolution;
  std::optional<std::array<int, 3>> coarse_divisions;
  std::optional<double> fine_extent;
  std::optional<int> top_k;
  std::optional<double> threshold_override;
  std::optional<bool> relocation_enabled;
  std::optional<int> cap_per_source;
  std::optional<bool> disable_pruning;
  std::optional<int> iterations;
  std::optional<std::string> summary_csv;
  std::optional<std::string> artifact_json;
  std::optional<std::string> probe_dump_csv;
  std::optional<std::string> plan_json;
  std::optional<bool> emit_timings;
};

struct StageTiming {
  std::string stage;
  double seconds{0.0};
};

/// Everything a run produced. Timings are diagnostics and do not take part
/// in equality; two runs of the same config compare equal.
struct RunArtifact {
  RunConfig config;
  std::vector<HeatSource> sources;
  HotspotReport report;
  std::vector<RelocationPlan> plans;
  std::optional<RelocationMetrics> metrics;
  std::vector<StageTiming> timings;

  friend bool operator==(const RunArtifact& a, const RunArtifact& b) {
    return a.config == b.config && a.sources == b.sources && a.report == b.report &&
           a.plans == b.plans && a.metrics == b.metrics;
  }
};

/// Builds a validated RunConfig from an optional JSON config file plus flag
/// overrides. Defaults fill unset mesh/hotspot/relocation fields; box
/// dimensions and a source specification are required.
RunConfig parse_config(const std::optional<std::string>& config_path,
                       const CliOverrides& overrides);

/// Same, from in-memory JSON text.
RunConfig parse_config_text(const std::string& json_text, const CliOverrides& overrides);

void validate_config(const RunConfig& cfg);

/// Full pipeline: sources -> probes -> field -> threshold -> hotspots, then
/// optionally the relocation loop, then report emission to the configured
/// paths.
RunArtifact run_simulation(const RunConfig& cfg);

/// One run per source count (seed derived as base seed + index, relocation
/// off), summarized into the results-table CSV shape. Writes
/// output.summary_csv when configured.
SummaryTable run_sweep(const RunConfig& cfg, const std::vector<int>& counts);

/// Writes summary CSV, artifact JSON, optional standalone plan JSON and the
/// optional per-probe dump. The dump needs live field data; emitting from a
/// reloaded artifact with a dump path configured is an error.
void emit_reports(const RunArtifact& artifact, const OutputOptions& output,
                  const ThermalField* field = nullptr, const ExcessField* excess = nullptr);

std::string config_to_json(const RunConfig& cfg);
std::string artifact_to_json(const RunArtifact& artifact, bool include_timings = false);
RunArtifact artifact_from_json(const std::string& json_text);
RunArtifact load_artifact(const std::string& path);

}  // namespace thermagrid
