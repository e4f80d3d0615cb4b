#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "relumap/network.hpp"

namespace relumap {

struct Checkpoint {
  NetworkParams params;
  std::optional<InitScheme> init;  // provenance, absent for imported weights
};

// Single JSON document; field names are part of the format (see README).
std::string checkpoint_to_json(const NetworkParams& params,
                               const std::optional<InitScheme>& init = std::nullopt);
Checkpoint checkpoint_from_json(const std::string& json_text);

void save_checkpoint(const std::filesystem::path& path, const NetworkParams& params,
                     const std::optional<InitScheme>& init = std::nullopt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace relumap
