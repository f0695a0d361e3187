#include "thermagrid/thermal_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thermagrid {

HeatSource::HeatSource(Point3 position_, double strength_)
    : position(position_), strength(strength_) {
  if (!is_finite(position)) {
    throw ValidationError("source.position: coordinates must be finite");
  }
  if (!(strength > 0.0) || !std::isfinite(strength)) {
    throw ValidationError("source.strength: must be finite and > 0");
  }
}

Layer::Layer(double thickness_, double conductivity_)
    : thickness(thickness_), conductivity(conductivity_) {
  if (!(thickness > 0.0) || !std::isfinite(thickness)) {
    throw ValidationError("layer.thickness: must be finite and > 0");
  }
  if (!(conductivity > 0.0) || !std::isfinite(conductivity)) {
    throw ValidationError("layer.conductivity: must be finite and > 0");
  }
}

double cap_solid_angle(double distance) {
  if (!std::isfinite(distance) || distance < 0.5) {
    throw std::domain_error(
        "cap_solid_angle: distance must be >= 0.5 (source sphere engulfed below)");
  }
  const double cos_theta = 1.0 - 1.0 / (2.0 * distance * distance);
  return 2.0 * std::numbers::pi * (1.0 - cos_theta);
}

double contribution(double strength, double distance) {
  if (!(strength > 0.0) || !std::isfinite(strength)) {
    throw ValidationError("contribution: strength must be finite and > 0");
  }
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw ValidationError("contribution: distance must be finite and >= 0");
  }
  return detail::contribution_unchecked(strength, distance);
}

double cumulative_power(const Point3& target, std::span<const HeatSource> sources) {
  if (sources.empty()) {
    throw ValidationError("cumulative_power: source list must be non-empty");
  }
  // Kahan-compensated sum in source order.
  double sum = 0.0;
  double comp = 0.0;
  for (const HeatSource& s : sources) {
    const double term =
        detail::contribution_unchecked(s.strength, euclidean_distance(target, s.position));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double effective_conductivity(const LayerStack& stack) {
  if (stack.layers.empty()) {
    throw ValidationError("layers: stack must contain at least one layer");
  }
  double wk = 0.0;
  for (const Layer& layer : stack.layers) {
    wk += layer.thickness * layer.conductivity;
  }
  return wk;
}

double temperature(double power, double wk_eff) {
  if (!(wk_eff > 0.0) || !std::isfinite(wk_eff)) {
    throw std::domain_error("temperature: wk_eff must be finite and > 0");
  }
  if (!(power >= 0.0) || !std::isfinite(power)) {
    throw ValidationError("temperature: power must be finite and >= 0");
  }
  return power / wk_eff;
}

}  // namespace thermagrid
