#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "serialization_detail.hpp"
#include "thermagrid/pipeline.hpp"

namespace thermagrid {
namespace {

using nlohmann::json;

json point_to_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError("position: expected an array of 3 numbers");
  }
  return Point3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json source_to_json(const HeatSource& s) {
  return json{{"position", point_to_json(s.position)}, {"strength", s.strength}};
}

HeatSource source_from_json(const json& j) {
  return HeatSource(point_from_json(j.at("position")), j.at("strength").get<double>());
}

json config_to_json_obj(const RunConfig& cfg) {
  json j;
  j["box"] = {{"origin", point_to_json(cfg.box.origin)},
              {"dims", json::array({cfg.box.lx, cfg.box.ly, cfg.box.lz})}};
  if (cfg.layers) {
    json layers = json::array();
    for (const Layer& l : cfg.layers->layers) {
      layers.push_back({{"thickness", l.thickness}, {"conductivity", l.conductivity}});
    }
    j["layers"] = layers;
  }
  json sources;
  if (cfg.source_config) {
    sources["count"] = cfg.source_config->count;
    sources["strength_range"] =
        json::array({cfg.source_config->strength_min, cfg.source_config->strength_max});
    sources["seed"] = cfg.source_config->seed;
  }
  if (cfg.explicit_sources) {
    json list = json::array();
    for (const HeatSource& s : *cfg.explicit_sources) {
      list.push_back(source_to_json(s));
    }
    sources["explicit"] = list;
  }
  j["sources"] = sources;
  j["mesh"] = {{"coarse_divisions", cfg.mesh.coarse_divisions},
               {"fine_resolution", cfg.mesh.fine_resolution},
               {"fine_extent", cfg.mesh.fine_extent}};
  json hotspot{{"top_k", cfg.hotspot.top_k}};
  if (cfg.hotspot.threshold_override) {
    hotspot["threshold_override"] = *cfg.hotspot.threshold_override;
  }
  j["hotspot"] = hotspot;
  j["relocation"] = {{"enabled", cfg.relocation.enabled},
                     {"cap_per_source", cfg.relocation.cap_per_source},
                     {"disable_pruning", cfg.relocation.disable_pruning},
                     {"iterations", cfg.relocation.iterations}};
  json output{{"emit_timings", cfg.output.emit_timings}};
  if (cfg.output.summary_csv) {
    output["summary_csv"] = *cfg.output.summary_csv;
  }
  if (cfg.output.artifact_json) {
    output["artifact_json"] = *cfg.output.artifact_json;
  }
  if (cfg.output.probe_dump_csv) {
    output["probe_dump_csv"] = *cfg.output.probe_dump_csv;
  }
  if (cfg.output.plan_json) {
    output["plan_json"] = *cfg.output.plan_json;
  }
  j["output"] = output;
  return j;
}

RunConfig config_from_json_obj(const json& j) {
  RunConfig cfg;
  if (j.contains("box")) {
    const json& box = j.at("box");
    Point3 origin{};
    if (box.contains("origin")) {
      origin = point_from_json(box.at("origin"));
    }
    const json& dims = box.at("dims");
    if (!dims.is_array() || dims.size() != 3) {
      throw ValidationError("box.dims: expected an array of 3 numbers");
    }
    cfg.box = Box3(origin, dims[0].get<double>(), dims[1].get<double>(),
                   dims[2].get<double>());
  }
  if (j.contains("layers")) {
    LayerStack stack;
    for (const json& l : j.at("layers")) {
      stack.layers.emplace_back(l.at("thickness").get<double>(),
                                l.at("conductivity").get<double>());
    }
    cfg.layers = std::move(stack);
  }
  if (j.contains("sources")) {
    const json& s = j.at("sources");
    if (s.contains("count") || s.contains("seed") || s.contains("strength_range")) {
      SourceConfig sc;
      sc.count = s.value("count", 0);
      sc.seed = s.value("seed", std::uint64_t{0});
      if (s.contains("strength_range")) {
        const json& r = s.at("strength_range");
        if (!r.is_array() || r.size() != 2) {
          throw ValidationError("sources.strength_range: expected [min, max]");
        }
        sc.strength_min = r[0].get<double>();
        sc.strength_max = r[1].get<double>();
      } else {
        sc.strength_min = sc.strength_max = 1.0;
      }
      cfg.source_config = sc;
    }
    if (s.contains("explicit")) {
      std::vector<HeatSource> list;
      for (const json& e : s.at("explicit")) {
        list.push_back(source_from_json(e));
      }
      cfg.explicit_sources = std::move(list);
    }
  }
  if (j.contains("mesh")) {
    const json& m = j.at("mesh");
    if (m.contains("coarse_divisions")) {
      const json& d = m.at("coarse_divisions");
      if (!d.is_array() || d.size() != 3) {
        throw ValidationError("mesh.coarse_divisions: expected [nx, ny, nz]");
      }
      cfg.mesh.coarse_divisions = {d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
    }
    cfg.mesh.fine_resolution = m.value("fine_resolution", cfg.mesh.fine_resolution);
    cfg.mesh.fine_extent = m.value("fine_extent", cfg.mesh.fine_extent);
  }
  if (j.contains("hotspot")) {
    const json& h = j.at("hotspot");
    cfg.hotspot.top_k = h.value("top_k", cfg.hotspot.top_k);
    if (h.contains("threshold_override")) {
      cfg.hotspot.threshold_override = h.at("threshold_override").get<double>();
    }
  }
  if (j.contains("relocation")) {
    const json& r = j.at("relocation");
    cfg.relocation.enabled = r.value("enabled", cfg.relocation.enabled);
    cfg.relocation.cap_per_source = r.value("cap_per_source", cfg.relocation.cap_per_source);
    cfg.relocation.disable_pruning =
        r.value("disable_pruning", cfg.relocation.disable_pruning);
    cfg.relocation.iterations = r.value("iterations", cfg.relocation.iterations);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (o.contains("summary_csv")) {
      cfg.output.summary_csv = o.at("summary_csv").get<std::string>();
    }
    if (o.contains("artifact_json")) {
      cfg.output.artifact_json = o.at("artifact_json").get<std::string>();
    }
    if (o.contains("probe_dump_csv")) {
      cfg.output.probe_dump_csv = o.at("probe_dump_csv").get<std::string>();
    }
    if (o.contains("plan_json")) {
      cfg.output.plan_json = o.at("plan_json").get<std::string>();
    }
    cfg.output.emit_timings = o.value("emit_timings", cfg.output.emit_timings);
  }
  return cfg;
}

json report_to_json(const HotspotReport& r) {
  json hottest = json::array();
  for (const HotEntry& h : r.hottest) {
    hottest.push_back({{"probe_index", h.probe_index},
                       {"position", point_to_json(h.position)},
                       {"power", h.power}});
  }
  return json{{"threshold", r.threshold},
              {"n_sources", r.n_sources},
              {"fm_points", r.fm_points},
              {"cm_points", r.cm_points},
              {"total_points", r.total_points},
              {"fm_hotspots", r.fm_hotspots},
              {"cm_hotspots", r.cm_hotspots},
              {"fm_pct", r.fm_pct},
              {"cm_pct", r.cm_pct},
              {"hottest", hottest}};
}

HotspotReport report_from_json(const json& j) {
  HotspotReport r;
  r.threshold = j.at("threshold").get<double>();
  r.n_sources = j.at("n_sources").get<int>();
  r.fm_points = j.at("fm_points").get<std::size_t>();
  r.cm_points = j.at("cm_points").get<std::size_t>();
  r.total_points = j.at("total_points").get<std::size_t>();
  r.fm_hotspots = j.at("fm_hotspots").get<std::size_t>();
  r.cm_hotspots = j.at("cm_hotspots").get<std::size_t>();
  r.fm_pct = j.at("fm_pct").get<double>();
  r.cm_pct = j.at("cm_pct").get<double>();
  for (const json& h : j.at("hottest")) {
    r.hottest.push_back(HotEntry{h.at("probe_index").get<std::size_t>(),
                                 point_from_json(h.at("position")),
                                 h.at("power").get<double>()});
  }
  return r;
}

json plan_to_json(const RelocationPlan& plan) {
  json entries = json::array();
  for (const PlanEntry& e : plan.entries) {
    entries.push_back({{"source_index", e.source_index},
                       {"old_position", point_to_json(e.old_position)},
                       {"new_position", point_to_json(e.new_position)},
                       {"target_probe_index", e.target_probe_index},
                       {"manhattan_cost", e.manhattan_cost}});
  }
  return json{{"entries", entries}, {"total_cost", plan.total_cost}};
}

RelocationPlan plan_from_json(const json& j) {
  RelocationPlan plan;
  plan.total_cost = j.at("total_cost").get<double>();
  for (const json& e : j.at("entries")) {
    plan.entries.push_back(PlanEntry{e.at("source_index").get<std::uint32_t>(),
                                     point_from_json(e.at("old_position")),
                                     point_from_json(e.at("new_position")),
                                     e.at("target_probe_index").get<std::size_t>(),
                                     e.at("manhattan_cost").get<double>()});
  }
  return plan;
}

json stats_to_json(const FieldStats& s) {
  return json{{"threshold", s.threshold},
              {"max_power", s.max_power},
              {"mean_power", s.mean_power},
              {"power_variance", s.power_variance},
              {"coarse_max_power", s.coarse_max_power},
              {"coarse_mean_power", s.coarse_mean_power},
              {"coarse_power_variance", s.coarse_power_variance},
              {"fm_hotspots", s.fm_hotspots},
              {"cm_hotspots", s.cm_hotspots}};
}

FieldStats stats_from_json(const json& j) {
  FieldStats s;
  s.threshold = j.at("threshold").get<double>();
  s.max_power = j.at("max_power").get<double>();
  s.mean_power = j.at("mean_power").get<double>();
  s.power_variance = j.at("power_variance").get<double>();
  s.coarse_max_power = j.at("coarse_max_power").get<double>();
  s.coarse_mean_power = j.at("coarse_mean_power").get<double>();
  s.coarse_power_variance = j.at("coarse_power_variance").get<double>();
  s.fm_hotspots = j.at("fm_hotspots").get<std::size_t>();
  s.cm_hotspots = j.at("cm_hotspots").get<std::size_t>();
  return s;
}

// The top-level "plan" is always present: the single plan for one-shot
// runs, or the per-source composition across iterations otherwise.
json relocation_section(const std::vector<RelocationPlan>& plans,
                        const std::optional<RelocationMetrics>& metrics) {
  json section;
  if (plans.size() == 1) {
    const json p = plan_to_json(plans.front());
    section["plan"] = p.at("entries");
    section["total_cost"] = p.at("total_cost");
  } else {
    RelocationPlan composite;
    composite.entries = plans.front().entries;
    composite.total_cost = 0.0;
    for (std::size_t i = 0; i < composite.entries.size(); ++i) {
      composite.entries[i].new_position = plans.back().entries[i].new_position;
      composite.entries[i].target_probe_index = plans.back().entries[i].target_probe_index;
      double path_cost = 0.0;
      for (const RelocationPlan& p : plans) {
        path_cost += p.entries[i].manhattan_cost;
      }
      composite.entries[i].manhattan_cost = path_cost;
    }
    for (const RelocationPlan& p : plans) {
      composite.total_cost += p.total_cost;
    }
    const json c = plan_to_json(composite);
    section["plan"] = c.at("entries");
    section["total_cost"] = c.at("total_cost");
    json iterations = json::array();
    for (const RelocationPlan& p : plans) {
      iterations.push_back(plan_to_json(p));
    }
    section["iterations"] = iterations;
  }
  if (metrics) {
    section["before"] = stats_to_json(metrics->before);
    section["after"] = stats_to_json(metrics->after);
  }
  return section;
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
  return config_to_json_obj(cfg).dump(2) + "\n";
}

std::string artifact_to_json(const RunArtifact& artifact, bool include_timings) {
  json j;
  j["config"] = config_to_json_obj(artifact.config);
  json sources = json::array();
  for (const HeatSource& s : artifact.sources) {
    sources.push_back(source_to_json(s));
  }
  j["sources"] = sources;
  j["report"] = report_to_json(artifact.report);
  if (!artifact.plans.empty()) {
    j["relocation"] = relocation_section(artifact.plans, artifact.metrics);
  }
  if (include_timings) {
    json timings = json::object();
    for (const StageTiming& t : artifact.timings) {
      timings[t.stage] = t.seconds;
    }
    j["timings"] = timings;
  }
  return j.dump(2) + "\n";
}

RunArtifact artifact_from_json(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    RunArtifact artifact;
    artifact.config = config_from_json_obj(j.at("config"));
    for (const json& s : j.at("sources")) {
      artifact.sources.push_back(source_from_json(s));
    }
    artifact.report = report_from_json(j.at("report"));
    if (j.contains("relocation")) {
      const json& r = j.at("relocation");
      if (r.contains("iterations")) {
        for (const json& p : r.at("iterations")) {
          artifact.plans.push_back(plan_from_json(p));
        }
      } else {
        artifact.plans.push_back(
            plan_from_json(json{{"entries", r.at("plan")}, {"total_cost", r.at("total_cost")}}));
      }
      if (r.contains("before") && r.contains("after")) {
        artifact.metrics = RelocationMetrics{stats_from_json(r.at("before")),
                                             stats_from_json(r.at("after"))};
      }
    }
    if (j.contains("timings")) {
      for (const auto& [stage, seconds] : j.at("timings").items()) {
        artifact.timings.push_back(StageTiming{stage, seconds.get<double>()});
      }
    }
    return artifact;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("artifact JSON: ") + e.what());
  }
}

RunConfig parse_config_text(const std::string& json_text, const CliOverrides& overrides) {
  RunConfig cfg;
  try {
    cfg = config_from_json_obj(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config JSON: ") + e.what());
  }

  if (overrides.box_dims) {
    Point3 origin = overrides.box_origin
                        ? Point3{(*overrides.box_origin)[0], (*overrides.box_origin)[1],
                                 (*overrides.box_origin)[2]}
                        : cfg.box.origin;
    cfg.box = Box3(origin, (*overrides.box_dims)[0], (*overrides.box_dims)[1],
                   (*overrides.box_dims)[2]);
  } else if (overrides.box_origin) {
    cfg.box = Box3(Point3{(*overrides.box_origin)[0], (*overrides.box_origin)[1],
                          (*overrides.box_origin)[2]},
                   cfg.box.lx, cfg.box.ly, cfg.box.lz);
  }

  if (overrides.sources || overrides.seed || overrides.strength_range) {
    SourceConfig sc = cfg.source_config.value_or(SourceConfig{0, 1.0, 1.0, 0});
    if (overrides.sources) {
      sc.count = *overrides.sources;
    }
    if (overrides.seed) {
      sc.seed = *overrides.seed;
    }
    if (overrides.strength_range) {
      sc.strength_min = (*overrides.strength_range)[0];
      sc.strength_max = (*overrides.strength_range)[1];
    }
    cfg.source_config = sc;
    cfg.explicit_sources.reset();  // flags pick the random path
  }

  if (overrides.fine_resolution) {
    cfg.mesh.fine_resolution = *overrides.fine_resolution;
  }
  if (overrides.coarse_divisions) {
    cfg.mesh.coarse_divisions = *overrides.coarse_divisions;
  }
  if (overrides.fine_extent) {
    cfg.mesh.fine_extent = *overrides.fine_extent;
  }
  if (overrides.top_k) {
    cfg.hotspot.top_k = *overrides.top_k;
  }
  if (overrides.threshold_override) {
    cfg.hotspot.threshold_override = *overrides.threshold_override;
  }
  if (overrides.relocation_enabled) {
    cfg.relocation.enabled = *overrides.relocation_enabled;
  }
  if (overrides.cap_per_source) {
    cfg.relocation.cap_per_source = *overrides.cap_per_source;
  }
  if (overrides.disable_pruning) {
    cfg.relocation.disable_pruning = *overrides.disable_pruning;
  }
  if (overrides.iterations) {
    cfg.relocation.iterations = *overrides.iterations;
  }
  if (overrides.summary_csv) {
    cfg.output.summary_csv = *overrides.summary_csv;
  }
  if (overrides.artifact_json) {
    cfg.output.artifact_json = *overrides.artifact_json;
  }
  if (overrides.probe_dump_csv) {
    cfg.output.probe_dump_csv = *overrides.probe_dump_csv;
  }
  if (overrides.plan_json) {
    cfg.output.plan_json = *overrides.plan_json;
  }
  if (overrides.emit_timings) {
    cfg.output.emit_timings = *overrides.emit_timings;
  }

  validate_config(cfg);
  return cfg;
}

RunConfig parse_config(const std::optional<std::string>& config_path,
                       const CliOverrides& overrides) {
  std::string text = "{}";
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) {
      throw IoError("cannot read config file: " + *config_path);
    }
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_config_text(text, overrides);
}

RunArtifact load_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read artifact file: " + path);
  }
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return artifact_from_json(text);
}

namespace detail {

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

void write_probe_dump(const std::string& path, const ThermalField& field,
                      const ExcessField& excess,
                      const std::optional<LayerStack>& layers) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  double wk_eff = 0.0;
  const bool with_temperature = layers.has_value();
  if (with_temperature) {
    wk_eff = effective_conductivity(*layers);
  }
  out << "x,y,z,mesh_class,power,excess";
  if (with_temperature) {
    out << ",temperature";
  }
  out << '\n';
  const auto& pts = field.probes->probes;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << format_double(pts[i].position.x) << ',' << format_double(pts[i].position.y)
        << ',' << format_double(pts[i].position.z) << ','
        << mesh_class_name(pts[i].mesh_class) << ',' << format_double(field.power[i])
        << ',' << format_double(excess.excess[i]);
    if (with_temperature) {
      out << ',' << format_double(temperature(field.power[i], wk_eff));
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

std::string plan_section_json(const std::vector<RelocationPlan>& plans,
                              const std::optional<RelocationMetrics>& metrics) {
  return relocation_section(plans, metrics).dump(2) + "\n";
}

}  // namespace detail

}  // namespace thermagrid
