#pragma once

#include <filesystem>
#include <string>

#include "relumap/regions.hpp"

namespace relumap {

// {domain, per_layer_counts, regions:[{vertices, pattern, winner, logit_affines}]}
// winner is -1 when the arrangement was cut only up to an intermediate layer.
std::string arrangement_to_json(const RegionArrangement& arr);

void write_region_dump(const std::filesystem::path& path, const RegionArrangement& arr);

std::string line_scan_to_json(const LineScan& scan);

}  // namespace relumap
