#include "thermagrid/relocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace thermagrid {
namespace {

double kahan_sum(const std::vector<double>& values, std::size_t begin, std::size_t end,
                 double (*transform)(double, double), double arg) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double term = transform(values[i], arg);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double identity(double x, double) { return x; }
double sq_dev(double x, double mu) { return (x - mu) * (x - mu); }

FieldStats field_stats(const ThermalField& field) {
  FieldStats stats;
  stats.threshold = compute_threshold(field);

  const auto& pts = field.probes->probes;
  const auto& power = field.power;
  const std::size_t n = power.size();

  stats.max_power = -std::numeric_limits<double>::infinity();
  for (double p : power) {
    stats.max_power = std::max(stats.max_power, p);
  }
  stats.mean_power = kahan_sum(power, 0, n, identity, 0.0) / static_cast<double>(n);
  stats.power_variance =
      kahan_sum(power, 0, n, sq_dev, stats.mean_power) / static_cast<double>(n);

  const std::size_t coarse_begin = n - field.probes->coarse_count;
  const std::size_t nc = field.probes->coarse_count;
  if (nc > 0) {
    stats.coarse_max_power = -std::numeric_limits<double>::infinity();
    for (std::size_t i = coarse_begin; i < n; ++i) {
      stats.coarse_max_power = std::max(stats.coarse_max_power, power[i]);
    }
    stats.coarse_mean_power =
        kahan_sum(power, coarse_begin, n, identity, 0.0) / static_cast<double>(nc);
    stats.coarse_power_variance =
        kahan_sum(power, coarse_begin, n, sq_dev, stats.coarse_mean_power) /
        static_cast<double>(nc);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (power[i] > stats.threshold) {
      if (pts[i].mesh_class == MeshClass::Fine) {
        ++stats.fm_hotspots;
      } else if (pts[i].mesh_class == MeshClass::Coarse) {
        ++stats.cm_hotspots;
      }
    }
  }
  return stats;
}

}  // namespace

CandidateSet eligible_targets(const ExcessField& excess, const ThermalField& field) {
  const auto& pts = field.probes->probes;
  if (excess.excess.size() != pts.size()) {
    throw ValidationError("eligible_targets: excess and field sizes differ");
  }

  double max_source_excess = -std::numeric_limits<double>::infinity();
  bool seen_source = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].mesh_class == MeshClass::Source) {
      max_source_excess = std::max(max_source_excess, excess.excess[i]);
      seen_source = true;
    }
  }
  if (!seen_source) {
    throw ValidationError("eligible_targets: field contains no SOURCE probes");
  }

  CandidateSet set;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].mesh_class != MeshClass::Source && excess.excess[i] >= max_source_excess) {
      set.targets.push_back(Candidate{i, pts[i].position, excess.excess[i]});
    }
  }
  return set;
}

CandidateSet prune_candidates(const CandidateSet& set, std::span<const HeatSource> sources,
                              std::size_t cap_per_source) {
  if (cap_per_source < 1) {
    throw ValidationError("relocation.cap_per_source: must be >= 1");
  }
  if (set.targets.size() <= cap_per_source || sources.empty()) {
    return set;
  }

  std::unordered_set<std::size_t> keep;
  std::vector<std::size_t> order(set.targets.size());
  for (const HeatSource& src : sources) {
    std::iota(order.begin(), order.end(), 0);
    const auto nearer = [&](std::size_t a, std::size_t b) {
      const double da = manhattan_distance(src.position, set.targets[a].position);
      const double db = manhattan_distance(src.position, set.targets[b].position);
      if (da != db) {
        return da < db;
      }
      return set.targets[a].probe_index < set.targets[b].probe_index;
    };
    std::nth_element(order.begin(),
                     order.begin() + static_cast<std::ptrdiff_t>(cap_per_source - 1),
                     order.end(), nearer);
    for (std::size_t k = 0; k < cap_per_source; ++k) {
      keep.insert(order[k]);
    }
  }

  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  CandidateSet pruned;
  pruned.targets.reserve(sorted.size());
  for (std::size_t idx : sorted) {
    pruned.targets.push_back(set.targets[idx]);
  }
  return pruned;
}

CostMatrix build_cost_matrix(std::span<const HeatSource> sources,
                             const CandidateSet& candidates) {
  if (candidates.targets.empty()) {
    throw ValidationError("build_cost_matrix: candidate set is empty");
  }
  CostMatrix costs(sources.size(), candidates.targets.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = 0; j < candidates.targets.size(); ++j) {
      costs.at(i, j) =
          manhattan_distance(sources[i].position, candidates.targets[j].position);
    }
  }
  return costs;
}

RelocationPlan min_weight_matching(const CostMatrix& costs,
                                   std::span<const HeatSource> sources,
                                   const CandidateSet& candidates) {
  if (costs.rows != sources.size() || costs.cols != candidates.targets.size()) {
    throw ValidationError("min_weight_matching: cost matrix shape mismatch");
  }
  const AssignmentResult assignment = min_cost_assignment(costs);

  RelocationPlan plan;
  plan.entries.reserve(sources.size());
  plan.total_cost = assignment.total_cost;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& target =
        candidates.targets[static_cast<std::size_t>(assignment.col_of_row[i])];
    plan.entries.push_back(PlanEntry{static_cast<std::uint32_t>(i), sources[i].position,
                                     target.position, target.probe_index,
                                     costs.at(i, static_cast<std::size_t>(
                                                      assignment.col_of_row[i]))});
  }
  return plan;
}

std::vector<HeatSource> apply_relocation(std::span<const HeatSource> sources,
                                         const RelocationPlan& plan) {
  if (plan.entries.size() != sources.size()) {
    throw ValidationError("apply_relocation: plan covers " +
                          std::to_string(plan.entries.size()) + " sources, expected " +
                          std::to_string(sources.size()));
  }
  std::vector<HeatSource> moved(sources.begin(), sources.end());
  std::vector<char> covered(sources.size(), 0);
  for (const PlanEntry& e : plan.entries) {
    if (e.source_index >= sources.size() || covered[e.source_index]) {
      throw ValidationError("apply_relocation: plan does not cover each source exactly once");
    }
    if (!(sources[e.source_index].position == e.old_position)) {
      throw ValidationError("apply_relocation: plan old_position does not match source " +
                            std::to_string(e.source_index));
    }
    covered[e.source_index] = 1;
    moved[e.source_index].position = e.new_position;
  }
  return moved;
}

RelocationMetrics evaluate_plan(const ThermalField& before, const ThermalField& after) {
  const ProbeSet& a = *before.probes;
  const ProbeSet& b = *after.probes;
  if (a.coarse_count != b.coarse_count) {
    throw ValidationError("evaluate_plan: coarse grids differ in size");
  }
  const std::size_t a_begin = a.size() - a.coarse_count;
  const std::size_t b_begin = b.size() - b.coarse_count;
  for (std::size_t k = 0; k < a.coarse_count; ++k) {
    if (!(a.probes[a_begin + k].position == b.probes[b_begin + k].position)) {
      throw ValidationError("evaluate_plan: coarse grid geometry mismatch");
    }
  }
  return RelocationMetrics{field_stats(before), field_stats(after)};
}

}  // namespace thermagrid
