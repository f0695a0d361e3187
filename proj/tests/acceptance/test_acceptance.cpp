// Acceptance suite: every release gate in one binary, one PASS/FAIL line
// each. Run via ctest (test name "acceptance") or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "support/construction.hpp"
#include "support/oracles.hpp"
#include "thermagrid/pipeline.hpp"

using namespace thermagrid;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, const std::string& label, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) {
    ++failures;
  }
}

template <typename Fn>
void criterion(int num, const std::string& label, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(num, label, false, std::string("exception: ") + e.what());
  }
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

int main() {
  criterion(1, "point-source constant: contribution(1, 1) == 1/4", [] {
    const double got = contribution(1.0, 1.0);
    report(1, "point-source constant: contribution(1, 1) == 1/4",
           std::abs(got - 0.25) <= 1e-15, "got " + fmt(got));
  });

  criterion(2, "engulfment plateau and continuity at d = 0.5", [] {
    bool ok = true;
    std::string detail;
    for (const double d : {0.0, 0.1, 0.5}) {
      if (contribution(1.0, d) != 1.0) {
        ok = false;
        detail = "contribution(1, " + fmt(d) + ") != 1";
      }
    }
    const double just_outside = contribution(1.0, 0.5 + 1e-9);
    if (std::abs(just_outside - 1.0) >= 1e-6) {
      ok = false;
      detail = "discontinuous at 0.5+1e-9: " + fmt(just_outside);
    }
    report(2, "engulfment plateau and continuity at d = 0.5", ok, detail);
  });

  criterion(3, "two-source construction: non-source hotspot above both sources", [] {
    // through the full pipeline, with the analytic source placement
    RunConfig cfg;
    cfg.box = Box3({0, 0, 0}, 4, 2, 2);
    cfg.explicit_sources = std::vector<HeatSource>{HeatSource({1.0, 1.0, 1.0}, 1.0),
                                                   HeatSource({2.0, 1.0, 1.0}, 1.0)};
    cfg.mesh.coarse_divisions = {4, 5, 5};
    const RunArtifact artifact = run_simulation(cfg);

    auto w = testsupport::make_two_source_world();
    const double threshold = compute_threshold(w.field);
    const double midpoint_power = w.field.power[w.midpoint_index];
    const bool midpoint_is_source =
        w.probes->probes[w.midpoint_index].mesh_class == MeshClass::Source;

    const bool ok = std::abs(artifact.report.threshold - 1.25) <= 1e-12 &&
                    std::abs(threshold - 1.25) <= 1e-12 &&
                    std::abs(midpoint_power - 2.0) <= 1e-12 &&
                    midpoint_power > threshold && !midpoint_is_source &&
                    artifact.report.cm_hotspots >= 1;
    report(3, "two-source construction: non-source hotspot above both sources", ok,
           "threshold " + fmt(threshold) + ", midpoint " + fmt(midpoint_power));
  });

  criterion(4, "solid-angle route matches the direct formula", [] {
    std::mt19937_64 rng(401);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const double q = testsupport::uniform(rng, 0.1, 10.0);
      const double d = testsupport::uniform(rng, 0.5, 10.0);
      const double via_cap = q * cap_solid_angle(d) / (4.0 * std::numbers::pi);
      if (!close_rel(via_cap, q / (4.0 * d * d), 1e-12)) {
        ++bad;
      }
    }
    report(4, "solid-angle route matches the direct formula", bad == 0,
           std::to_string(bad) + "/1000 mismatches");
  });

  criterion(5, "superposition: split fields add pointwise", [] {
    std::mt19937_64 rng(501);
    const Box3 box({0, 0, 0}, 12, 12, 12);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<HeatSource> all;
      const int n = 2 + static_cast<int>(rng() % 40);
      for (int i = 0; i < n; ++i) {
        all.emplace_back(testsupport::random_point(rng, box),
                         testsupport::uniform(rng, 0.1, 5.0));
      }
      const std::size_t split = 1 + rng() % (all.size() - 1);
      const std::span<const HeatSource> a(all.data(), split);
      const std::span<const HeatSource> b(all.data() + split, all.size() - split);
      for (int k = 0; k < 20; ++k) {
        const Point3 t = testsupport::random_point(rng, box);
        const double whole = cumulative_power(t, all);
        const double parts = cumulative_power(t, a) + cumulative_power(t, b);
        if (!close_rel(whole, parts, 1e-12)) {
          ++bad;
        }
      }
    }
    report(5, "superposition: split fields add pointwise", bad == 0,
           std::to_string(bad) + " mismatches");
  });

  criterion(6, "source excess pins to zero; eligibility rules coincide", [] {
    std::mt19937_64 rng(601);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const Box3 box({0, 0, 0}, 10, 8, 8);
      const auto sources =
          generate_sources({2 + static_cast<int>(rng() % 8), 0.5, 2.0, rng()}, box);
      MeshSpec spec;
      spec.fine_resolution = 3;
      spec.coarse_divisions = {5, 4, 4};
      auto probes = std::make_shared<const ProbeSet>(assemble_probes(sources, spec, box));
      const ThermalField field = compute_field(probes, sources);
      const double threshold = compute_threshold(field);
      const ExcessField excess = compute_excess(field, threshold);

      double max_source_excess = -1e300;
      for (std::size_t i = 0; i < probes->size(); ++i) {
        if (probes->probes[i].mesh_class == MeshClass::Source) {
          max_source_excess = std::max(max_source_excess, excess.excess[i]);
        }
      }
      if (max_source_excess != 0.0) {
        ++bad;
        continue;
      }

      const CandidateSet by_rule = eligible_targets(excess, field);
      std::vector<std::size_t> by_power;
      for (std::size_t i = 0; i < probes->size(); ++i) {
        if (probes->probes[i].mesh_class != MeshClass::Source &&
            field.power[i] <= threshold) {
          by_power.push_back(i);
        }
      }
      if (by_rule.targets.size() != by_power.size()) {
        ++bad;
        continue;
      }
      for (std::size_t k = 0; k < by_power.size(); ++k) {
        if (by_rule.targets[k].probe_index != by_power[k]) {
          ++bad;
          break;
        }
      }
    }
    report(6, "source excess pins to zero; eligibility rules coincide", bad == 0,
           std::to_string(bad) + "/50 configurations failed");
  });

  criterion(7, "matching equals brute force on small lattice instances", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(701);
    int bad = 0;
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t rows = 1 + rng() % 6;
      const std::size_t cols = rows + rng() % (9 - rows);
      std::vector<Point3> sources, targets;
      for (std::size_t i = 0; i < rows; ++i) {
        sources.push_back(testsupport::random_lattice_point(rng, 5));
      }
      for (std::size_t j = 0; j < cols; ++j) {
        targets.push_back(testsupport::random_lattice_point(rng, 5));
      }
      CostMatrix m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          m.at(i, j) = manhattan_distance(sources[i], targets[j]);
        }
      }
      if (min_cost_assignment(m).total_cost !=
          testsupport::brute_force_assignment(m).total_cost) {
        ++bad;
      }
    }
    const double secs = elapsed_s(t0);
    report(7, "matching equals brute force on small lattice instances",
           bad == 0 && secs < 5.0,
           std::to_string(bad) + "/120 mismatches in " + fmt(secs) + " s");
  });

  criterion(8, "mesh accounting at results-table scale", [] {
    const std::vector<std::size_t> want_fm{29160, 58320, 116640, 233280, 291600};
    RunConfig cfg;
    cfg.box = Box3({0, 0, 0}, 1000, 500, 500);
    cfg.source_config = SourceConfig{5, 0.9, 1.1, 1};

    // reduced coarse grid first: must finish in under 10 s
    RunConfig reduced = cfg;
    reduced.mesh.coarse_divisions = {50, 50, 50};
    auto t0 = std::chrono::steady_clock::now();
    const SummaryTable small = run_sweep(reduced, {5, 10, 20, 40, 50});
    const double small_secs = elapsed_s(t0);

    bool ok = small_secs < 10.0;
    for (std::size_t i = 0; i < small.rows.size(); ++i) {
      ok = ok && small.rows[i].fm_probes == want_fm[i] &&
           small.rows[i].cm_probes == 125000;
    }

    // full scale: 2,000,000 coarse probes per run, under 5 minutes total
    t0 = std::chrono::steady_clock::now();
    const SummaryTable full = run_sweep(cfg, {5, 10, 20, 40, 50});
    const double full_secs = elapsed_s(t0);
    ok = ok && full_secs < 300.0;
    std::string detail;
    for (std::size_t i = 0; i < full.rows.size(); ++i) {
      if (full.rows[i].fm_probes != want_fm[i] || full.rows[i].cm_probes != 2'000'000) {
        ok = false;
        detail = "row " + std::to_string(i) + ": fm " +
                 std::to_string(full.rows[i].fm_probes) + ", cm " +
                 std::to_string(full.rows[i].cm_probes);
      }
    }
    report(8, "mesh accounting at results-table scale", ok,
           detail.empty() ? "reduced " + fmt(small_secs) + " s, full " + fmt(full_secs) + " s"
                          : detail);
  });

  criterion(9, "hotspot fractions grow with source count", [] {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.box = Box3({0, 0, 0}, 40, 20, 20);
    cfg.source_config = SourceConfig{5, 0.9, 1.1, 1};
    cfg.mesh.coarse_divisions = {50, 50, 50};
    const SummaryTable table = run_sweep(cfg, {5, 10, 20, 40, 50});
    const double secs = elapsed_s(t0);

    bool ok = table.rows.size() == 5 && secs < 30.0;
    std::string pcts;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      if (i > 0 && (table.rows[i].fm_pct < table.rows[i - 1].fm_pct ||
                    table.rows[i].cm_pct < table.rows[i - 1].cm_pct)) {
        ok = false;
      }
      pcts += (i ? " " : "") + fmt(table.rows[i].fm_pct);
    }
    report(9, "hotspot fractions grow with source count", ok,
           "fm_pct: " + pcts + " (" + fmt(secs) + " s)");
  });

  criterion(10, "layered conductivity identities and temperature round-trip", [] {
    bool ok = std::abs(effective_conductivity({{Layer(1.0, 0.72)}}) - 0.72) <= 1e-15;
    const LayerStack stack{{Layer(0.03, 0.72), Layer(0.01, 0.0063), Layer(0.002, 0.017)}};
    ok = ok && std::abs(effective_conductivity(stack) - 0.021697) <= 1e-15;

    std::mt19937_64 rng(1010);
    for (int i = 0; i < 200; ++i) {
      const double p = testsupport::uniform(rng, 0.0, 50.0);
      const double wk = testsupport::uniform(rng, 1e-3, 5.0);
      if (!close_rel(temperature(p, wk) * wk, p, 1e-12)) {
        ok = false;
      }
    }
    report(10, "layered conductivity identities and temperature round-trip", ok);
  });

  criterion(11, "byte-identical outputs across identical runs", [] {
    const fs::path dir = fs::temp_directory_path() / "thermagrid_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    RunConfig cfg;
    cfg.box = Box3({0, 0, 0}, 12, 8, 8);
    cfg.source_config = SourceConfig{6, 0.5, 2.0, 2024};
    cfg.mesh.fine_resolution = 4;
    cfg.mesh.coarse_divisions = {8, 6, 6};
    cfg.relocation.enabled = true;
    cfg.relocation.cap_per_source = 8;
    cfg.output.summary_csv = (dir / "summary.csv").string();
    cfg.output.artifact_json = (dir / "artifact.json").string();

    run_simulation(cfg);
    const std::string csv1 = slurp(dir / "summary.csv");
    const std::string json1 = slurp(dir / "artifact.json");
    run_simulation(cfg);
    const std::string csv2 = slurp(dir / "summary.csv");
    const std::string json2 = slurp(dir / "artifact.json");

    report(11, "byte-identical outputs across identical runs",
           !csv1.empty() && csv1 == csv2 && !json1.empty() && json1 == json2);
  });

  criterion(12, "field evaluation at full scale inside the time budget", [] {
    RunConfig cfg;
    cfg.box = Box3({0, 0, 0}, 1000, 500, 500);
    cfg.source_config = SourceConfig{50, 0.9, 1.1, 5};
    const auto sources = generate_sources(*cfg.source_config, cfg.box);
    auto probes =
        std::make_shared<const ProbeSet>(assemble_probes(sources, cfg.mesh, cfg.box));
    const std::size_t n = probes->size();

    const auto t0 = std::chrono::steady_clock::now();
    const ThermalField field = compute_field(std::move(probes), sources);
    const double secs = elapsed_s(t0);

    report(12, "field evaluation at full scale inside the time budget",
           n >= 2'000'000 && field.power.size() == n && secs < 60.0,
           std::to_string(n) + " probes x 50 sources in " + fmt(secs) + " s");
  });

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
