#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "thermagrid/geometry.hpp"
#include "thermagrid/thermal_model.hpp"

namespace thermagrid {

enum class MeshClass : std::uint8_t { Source, Fine, Coarse };

const char* mesh_class_name(MeshClass c) noexcept;

/// A location where cumulative power gets evaluated. SOURCE and FINE probes
/// remember which source they belong to; COARSE probes belong to the global
/// lattice and carry no owner.
struct ProbePoint {
  Point3 position{};
  MeshClass mesh_class{MeshClass::Coarse};
  std::optional<std::uint32_t> owner_source{};

  friend bool operator==(const ProbePoint&, const ProbePoint&) = default;
};

struct MeshSpec {
  std::array<int, 3> coarse_divisions{200, 100, 100};
  int fine_resolution{18};
  double fine_extent{1.0};

  friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

/// Parameters for seeded random source placement. The generator is
/// mt19937_64; uniforms come from the top 53 bits of each draw, four draws
/// per source (x, y, z, strength), so a (seed, parameters) pair pins the
/// whole stream.
struct SourceConfig {
  int count{0};
  double strength_min{0.0};
  double strength_max{0.0};
  std::uint64_t seed{0};

  friend bool operator==(const SourceConfig&, const SourceConfig&) = default;
};

/// Concatenated probe list in a fixed order: one SOURCE probe per source,
/// then every fine grid in source order, then the coarse grid.
struct ProbeSet {
  std::vector<ProbePoint> probes;
  std::size_t source_count{0};
  std::size_t fine_count{0};
  std::size_t coarse_count{0};

  std::size_t size() const noexcept { return probes.size(); }
};

std::vector<HeatSource> generate_sources(const SourceConfig& cfg, const Box3& box);

/// Regular lattice of cell centers spanning the box, nx*ny*nz points.
std::vector<ProbePoint> coarse_grid(const Box3& box, const std::array<int, 3>& divisions);

/// r^3 lattice of cell centers filling the cube of half-width
/// spec.fine_extent around the source, clipped to the box.
std::vector<ProbePoint> fine_grid(const HeatSource& source, std::uint32_t source_index,
                                  const MeshSpec& spec, const Box3& box);

ProbeSet assemble_probes(std::span<const HeatSource> sources, const MeshSpec& spec,
                         const Box3& box);

}  // namespace thermagrid
