#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thermagrid/hotspot.hpp"
#include "thermagrid/matching.hpp"

namespace thermagrid {

/// A grid position a source may move to.
struct Candidate {
  std::size_t probe_index{0};
  Point3 position{};
  double excess{0.0};

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Eligible target positions, ordered by probe index.
struct CandidateSet {
  std::vector<Candidate> targets;
};

struct PlanEntry {
  std::uint32_t source_index{0};
  Point3 old_position{};
  Point3 new_position{};
  std::size_t target_probe_index{0};
  double manhattan_cost{0.0};

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Injective source -> target assignment with Manhattan edge costs.
struct RelocationPlan {
  std::vector<PlanEntry> entries;
  double total_cost{0.0};

  friend bool operator==(const RelocationPlan&, const RelocationPlan&) = default;
};

/// Field statistics for before/after comparison. Power moments over every
/// probe, plus the coarse-grid slice separately since the coarse lattice is
/// the part of the geometry both fields share after sources move.
struct FieldStats {
  double threshold{0.0};
  double max_power{0.0};
  double mean_power{0.0};
  double power_variance{0.0};
  double coarse_max_power{0.0};
  double coarse_mean_power{0.0};
  double coarse_power_variance{0.0};
  std::size_t fm_hotspots{0};
  std::size_t cm_hotspots{0};

  friend bool operator==(const FieldStats&, const FieldStats&) = default;
};

struct RelocationMetrics {
  FieldStats before;
  FieldStats after;

  friend bool operator==(const RelocationMetrics&, const RelocationMetrics&) = default;
};

/// Non-source probes whose excess is at least the maximum excess over the
/// source probes. Under the standard threshold that maximum is exactly
/// zero, so these are the probes no hotter than the threshold.
CandidateSet eligible_targets(const ExcessField& excess, const ThermalField& field);

/// Union over sources of the cap_per_source Manhattan-nearest candidates
/// (ties by probe index). Keeps exact matching tractable on multimillion
/// point grids.
CandidateSet prune_candidates(const CandidateSet& set, std::span<const HeatSource> sources,
                              std::size_t cap_per_source);

CostMatrix build_cost_matrix(std::span<const HeatSource> sources,
                             const CandidateSet& candidates);

/// Exact minimum-total-cost assignment of every source to a distinct
/// candidate. Throws InfeasibleMatchingError when there are fewer
/// candidates than sources.
RelocationPlan min_weight_matching(const CostMatrix& costs,
                                   std::span<const HeatSource> sources,
                                   const CandidateSet& candidates);

/// Moves each source to its assigned target, keeping strengths.
std::vector<HeatSource> apply_relocation(std::span<const HeatSource> sources,
                                         const RelocationPlan& plan);

/// Before/after comparison. Requires both fields to share the same coarse
/// lattice; fine grids are expected to have moved with their sources.
/// These are observations only: total received power over a shared probe
/// set is not conserved by moving sources (contributions depend on
/// distances), and no improvement is guaranteed.
RelocationMetrics evaluate_plan(const ThermalField& before, const ThermalField& after);

}  // namespace thermagrid
