#pragma once

#include <filesystem>
#include <string>

#include "relumap/datasets.hpp"
#include "relumap/regions.hpp"

namespace relumap {

// One filled path per region, colored by a stable hash of its activation
// pattern, plus the domain border.
std::string regions_svg(const RegionArrangement& arr);
void render_regions_svg(const RegionArrangement& arr, const std::filesystem::path& path);

// Grid-based class coloring from the arrangement's logit maps; pixels whose
// top-two logit gap falls below gap_threshold render white, and dataset
// points are overplotted in class colors.
std::string decision_svg(const RegionArrangement& arr, const Dataset2D& data,
                         double gap_threshold, int resolution = 400);
void render_decision_svg(const RegionArrangement& arr, const Dataset2D& data,
                         const std::filesystem::path& path, double gap_threshold,
                         int resolution = 400);

// 2% of the max absolute logit over the domain.
double default_gap_threshold(const RegionArrangement& arr);

}  // namespace relumap
