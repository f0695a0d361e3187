#include "thermagrid/hotspot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "thermagrid/threading.hpp"

namespace thermagrid {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ThermalField compute_field(std::shared_ptr<const ProbeSet> probes,
                           std::span<const HeatSource> sources) {
  if (!probes) {
    throw ValidationError("compute_field: probe set must not be null");
  }
  if (sources.empty()) {
    throw ValidationError("compute_field: source list must be non-empty");
  }
  ThermalField field;
  field.power.resize(probes->size());
  const auto& pts = probes->probes;
  parallel_for(pts.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      field.power[i] = cumulative_power(pts[i].position, sources);
    }
  });
  field.probes = std::move(probes);
  return field;
}

double compute_threshold(const ThermalField& field) {
  double min_power = std::numeric_limits<double>::infinity();
  bool seen = false;
  for (std::size_t i = 0; i < field.probes->size(); ++i) {
    if (field.probes->probes[i].mesh_class == MeshClass::Source) {
      min_power = std::min(min_power, field.power[i]);
      seen = true;
    }
  }
  if (!seen) {
    throw ValidationError("compute_threshold: field contains no SOURCE probes");
  }
  return min_power;
}

HotspotReport detect_hotspots(const ThermalField& field, double threshold, int top_k) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ValidationError("threshold: must be finite and > 0");
  }
  if (top_k < 0) {
    throw ValidationError("hotspot.top_k: must be >= 0");
  }

  HotspotReport report;
  report.threshold = threshold;
  const auto& pts = field.probes->probes;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    switch (pts[i].mesh_class) {
      case MeshClass::Source:
        ++report.n_sources;
        break;
      case MeshClass::Fine:
        ++report.fm_points;
        if (field.power[i] > threshold) {
          ++report.fm_hotspots;
        }
        break;
      case MeshClass::Coarse:
        ++report.cm_points;
        if (field.power[i] > threshold) {
          ++report.cm_hotspots;
        }
        break;
    }
  }
  report.total_points = report.fm_points + report.cm_points;
  if (report.total_points > 0) {
    report.fm_pct = static_cast<double>(report.fm_hotspots) /
                    static_cast<double>(report.total_points);
    report.cm_pct = static_cast<double>(report.cm_hotspots) /
                    static_cast<double>(report.total_points);
  }

  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(top_k), pts.size());
  if (k > 0) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    const auto hotter = [&](std::size_t a, std::size_t b) {
      if (field.power[a] != field.power[b]) {
        return field.power[a] > field.power[b];
      }
      return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), hotter);
    report.hottest.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      report.hottest.push_back(
          HotEntry{order[i], pts[order[i]].position, field.power[order[i]]});
    }
  }
  return report;
}

ExcessField compute_excess(const ThermalField& field, double threshold) {
  ExcessField excess;
  excess.threshold = threshold;
  excess.excess.resize(field.power.size());
  for (std::size_t i = 0; i < field.power.size(); ++i) {
    excess.excess[i] = threshold - field.power[i];
  }
  return excess;
}

SummaryTable summarize(std::span<const HotspotReport> reports) {
  SummaryTable table;
  table.rows.reserve(reports.size());
  for (const HotspotReport& r : reports) {
    table.rows.push_back(SummaryRow{r.n_sources, r.threshold, r.total_points, r.fm_points,
                                    r.cm_points, r.fm_hotspots, r.cm_hotspots, r.fm_pct,
                                    r.cm_pct});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) {
                     return a.n_sources < b.n_sources;
                   });
  return table;
}

std::string SummaryTable::to_csv() const {
  std::string out =
      "n_sources,threshold,total_probes,fm_probes,cm_probes,fm_hotspots,cm_hotspots,"
      "fm_pct,cm_pct\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.n_sources);
    out += ',';
    out += format_double(r.threshold);
    out += ',';
    out += std::to_string(r.total_probes);
    out += ',';
    out += std::to_string(r.fm_probes);
    out += ',';
    out += std::to_string(r.cm_probes);
    out += ',';
    out += std::to_string(r.fm_hotspots);
    out += ',';
    out += std::to_string(r.cm_hotspots);
    out += ',';
    out += format_double(r.fm_pct);
    out += ',';
    out += format_double(r.cm_pct);
    out += '\n';
  }
  return out;
}

}  // namespace thermagrid
