#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "thermagrid/meshing.hpp"
#include "thermagrid/thermal_model.hpp"

namespace thermagrid {

/// Cumulative power evaluated at every probe of a set. The probe set is
/// shared read-only; fields over the same geometry (before/after a
/// relocation of sources) can reference the same coarse lattice.
struct ThermalField {
  std::shared_ptr<const ProbeSet> probes;
  std::vector<double> power;
};

/// Per-probe excess S = threshold - power. Positive means cooler than the
/// threshold, negative means hotspot territory.
struct ExcessField {
  double threshold{0.0};
  std::vector<double> excess;
};

struct HotEntry {
  std::size_t probe_index{0};
  Point3 position{};
  double power{0.0};

  friend bool operator==(const HotEntry&, const HotEntry&) = default;
};

/// Per-run accounting in the shape of the continuous-domain results table:
/// probe and hotspot counts split by mesh class, percentages over the
/// FINE+COARSE total, and the hottest probes for reporting.
struct HotspotReport {
  double threshold{0.0};
  int n_sources{0};
  std::size_t fm_points{0};
  std::size_t cm_points{0};
  std::size_t total_points{0};
  std::size_t fm_hotspots{0};
  std::size_t cm_hotspots{0};
  double fm_pct{0.0};
  double cm_pct{0.0};
  std::vector<HotEntry> hottest;

  friend bool operator==(const HotspotReport&, const HotspotReport&) = default;
};

struct SummaryRow {
  int n_sources{0};
  double threshold{0.0};
  std::size_t total_probes{0};
  std::size_t fm_probes{0};
  std::size_t cm_probes{0};
  std::size_t fm_hotspots{0};
  std::size_t cm_hotspots{0};
  double fm_pct{0.0};
  double cm_pct{0.0};

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct SummaryTable {
  std::vector<SummaryRow> rows;

  /// CSV with the exact header
  /// n_sources,threshold,total_probes,fm_probes,cm_probes,fm_hotspots,cm_hotspots,fm_pct,cm_pct
  std::string to_csv() const;

  friend bool operator==(const SummaryTable&, const SummaryTable&) = default;
};

/// Evaluates cumulative power at every probe, in parallel over probes.
ThermalField compute_field(std::shared_ptr<const ProbeSet> probes,
                           std::span<const HeatSource> sources);

/// Minimum cumulative power over SOURCE probes.
double compute_threshold(const ThermalField& field);

/// Counts FINE/COARSE probes whose power strictly exceeds the threshold.
/// SOURCE probes are never counted as hotspots; they do appear in the
/// hottest list. Ties in the hottest list break by probe index.
HotspotReport detect_hotspots(const ThermalField& field, double threshold, int top_k = 20);

ExcessField compute_excess(const ThermalField& field, double threshold);

/// One row per report, ordered by source count.
SummaryTable summarize(std::span<const HotspotReport> reports);

/// Shortest round-trip decimal form, used everywhere a double lands in a
/// CSV or text report so identical runs produce identical bytes.
std::string format_double(double value);

}  // namespace thermagrid
