#include "thermagrid/meshing.hpp"

#include <random>
#include <string>

namespace thermagrid {
namespace {

// Uniform double in [0, 1) from the top 53 bits of one engine draw. The
// engine itself is fully specified by the standard, so streams are
// reproducible across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate_divisions(const std::array<int, 3>& divisions) {
  if (divisions[0] < 1 || divisions[1] < 1 || divisions[2] < 1) {
    throw ValidationError("mesh.coarse_divisions: all division counts must be >= 1");
  }
}

}  // namespace

const char* mesh_class_name(MeshClass c) noexcept {
  switch (c) {
    case MeshClass::Source:
      return "SOURCE";
    case MeshClass::Fine:
      return "FINE";
    case MeshClass::Coarse:
      return "COARSE";
  }
  return "UNKNOWN";
}

std::vector<HeatSource> generate_sources(const SourceConfig& cfg, const Box3& box) {
  if (cfg.count < 1) {
    throw ValidationError("sources.count: must be >= 1");
  }
  if (!(cfg.strength_min > 0.0) || !(cfg.strength_min <= cfg.strength_max) ||
      !std::isfinite(cfg.strength_min) || !std::isfinite(cfg.strength_max)) {
    throw ValidationError("sources.strength_range: need 0 < Qmin <= Qmax, both finite");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<HeatSource> sources;
  sources.reserve(static_cast<std::size_t>(cfg.count));
  const double span = cfg.strength_max - cfg.strength_min;
  for (int i = 0; i < cfg.count; ++i) {
    Point3 p;
    p.x = box.origin.x + uniform01(rng) * box.lx;
    p.y = box.origin.y + uniform01(rng) * box.ly;
    p.z = box.origin.z + uniform01(rng) * box.lz;
    const double strength = cfg.strength_min + uniform01(rng) * span;
    sources.emplace_back(p, strength);
  }
  return sources;
}

std::vector<ProbePoint> coarse_grid(const Box3& box, const std::array<int, 3>& divisions) {
  validate_divisions(divisions);
  const auto [nx, ny, nz] = divisions;
  const double sx = box.lx / (2.0 * nx);
  const double sy = box.ly / (2.0 * ny);
  const double sz = box.lz / (2.0 * nz);

  std::vector<ProbePoint> points;
  points.reserve(static_cast<std::size_t>(nx) * ny * nz);
  for (int ix = 0; ix < nx; ++ix) {
    const double x = box.origin.x + (2 * ix + 1) * sx;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = box.origin.y + (2 * iy + 1) * sy;
      for (int iz = 0; iz < nz; ++iz) {
        const double z = box.origin.z + (2 * iz + 1) * sz;
        points.push_back(ProbePoint{{x, y, z}, MeshClass::Coarse, std::nullopt});
      }
    }
  }
  return points;
}

std::vector<ProbePoint> fine_grid(const HeatSource& source, std::uint32_t source_index,
                                  const MeshSpec& spec, const Box3& box) {
  if (spec.fine_resolution < 1) {
    throw ValidationError("mesh.fine_resolution: must be >= 1");
  }
  if (!(spec.fine_extent > 0.0) || !std::isfinite(spec.fine_extent)) {
    throw ValidationError("mesh.fine_extent: must be finite and > 0");
  }
  const int r = spec.fine_resolution;
  const double step = spec.fine_extent / r;

  // Cell-center offsets across [-extent, +extent]; for r = 1 the single
  // offset is exactly zero, putting the probe on the source itself.
  std::vector<double> offsets(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    offsets[static_cast<std::size_t>(k)] = (2 * k + 1) * step - spec.fine_extent;
  }

  std::vector<ProbePoint> points;
  points.reserve(static_cast<std::size_t>(r) * r * r);
  for (int ix = 0; ix < r; ++ix) {
    for (int iy = 0; iy < r; ++iy) {
      for (int iz = 0; iz < r; ++iz) {
        const Point3 p{source.position.x + offsets[static_cast<std::size_t>(ix)],
                       source.position.y + offsets[static_cast<std::size_t>(iy)],
                       source.position.z + offsets[static_cast<std::size_t>(iz)]};
        if (contains(box, p)) {
          points.push_back(ProbePoint{p, MeshClass::Fine, source_index});
        }
      }
    }
  }
  return points;
}

ProbeSet assemble_probes(std::span<const HeatSource> sources, const MeshSpec& spec,
                         const Box3& box) {
  validate_divisions(spec.coarse_divisions);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!contains(box, sources[i].position)) {
      throw ValidationError("sources[" + std::to_string(i) + "].position: outside the box");
    }
  }

  ProbeSet set;
  set.source_count = sources.size();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    set.probes.push_back(ProbePoint{sources[i].position, MeshClass::Source,
                                    static_cast<std::uint32_t>(i)});
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto fine = fine_grid(sources[i], static_cast<std::uint32_t>(i), spec, box);
    set.fine_count += fine.size();
    set.probes.insert(set.probes.end(), fine.begin(), fine.end());
  }
  auto coarse = coarse_grid(box, spec.coarse_divisions);
  set.coarse_count = coarse.size();
  set.probes.insert(set.probes.end(), coarse.begin(), coarse.end());
  return set;
}

}  // namespace thermagrid
