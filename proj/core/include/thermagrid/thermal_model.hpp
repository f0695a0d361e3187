#pragma once

#include <span>
#include <vector>

#include "thermagrid/geometry.hpp"

namespace thermagrid {

/// A point source that is always on, radiating `strength` watts uniformly
/// in all directions.
struct HeatSource {
  Point3 position{};
  double strength{0.0};

  HeatSource() = default;
  HeatSource(Point3 position_, double strength_);

  friend bool operator==(const HeatSource&, const HeatSource&) = default;
};

/// One material layer of the stack: thickness in cm, conductivity in W/(cm*K).
/// Both values are kept in the same length unit so the thickness-weighted
/// sum below comes out in W/K.
struct Layer {
  double thickness{0.0};
  double conductivity{0.0};

  Layer() = default;
  Layer(double thickness_, double conductivity_);

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct LayerStack {
  std::vector<Layer> layers;

  friend bool operator==(const LayerStack&, const LayerStack&) = default;
};

/// Solid angle (steradians) of the spherical cap that the unit sphere around
/// the target cuts out of the source-centered sphere of radius d. Defined for
/// d >= 0.5; below that the source sphere sits entirely inside the unit
/// sphere and there is no cap.
///
/// Computed through the cap geometry, tau = 2*pi*(1 - cos(theta)) with
/// cos(theta) = 1 - 1/(2*d^2). The closed form pi/d^2 is equivalent; keeping
/// the trigonometric route here lets tests cross-check it against the direct
/// power formula.
double cap_solid_angle(double distance);

/// Power received by the unit sphere around a target from a source of the
/// given strength at the given Euclidean distance. Full engulfment for
/// d <= 0.5 (the whole source sphere lies inside the unit sphere), otherwise
/// strength/(4*d^2). Continuous at d = 0.5 and monotone non-increasing in d.
double contribution(double strength, double distance);

/// Sum of contributions from every source at `target`, in fixed source order
/// with compensated accumulation so the result does not depend on how
/// callers partition work across threads.
double cumulative_power(const Point3& target, std::span<const HeatSource> sources);

/// Thickness-weighted sum of layer conductivities (W/K).
double effective_conductivity(const LayerStack& stack);

/// Temperature rise from power through the layered stack: P / wK_eff.
double temperature(double power, double wk_eff);

namespace detail {

/// contribution() without argument validation, for hot loops that have
/// already validated their sources.
inline double contribution_unchecked(double strength, double distance) noexcept {
  if (distance <= 0.5) {
    return strength;
  }
  return strength / (4.0 * distance * distance);
}

}  // namespace detail

}  // namespace thermagrid
