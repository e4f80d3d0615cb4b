#pragma once

#include <filesystem>
#include <string>

namespace relumap {

// Write-temp-then-rename so partially written files never appear at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace relumap
