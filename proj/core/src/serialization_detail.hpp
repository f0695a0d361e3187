#pragma once

#include <string>

#include "thermagrid/pipeline.hpp"

namespace thermagrid::detail {

void write_text_file(const std::string& path, const std::string& content);

void write_probe_dump(const std::string& path, const ThermalField& field,
                      const ExcessField& excess,
                      const std::optional<LayerStack>& layers);

std::string plan_section_json(const std::vector<RelocationPlan>& plans,
                              const std::optional<RelocationMetrics>& metrics);

}  // namespace thermagrid::detail
