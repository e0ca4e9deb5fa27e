#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace solmut {

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `text` to a sibling temporary and renames it over `path`, creating
/// parent directories as needed. Readers never see a partial file.
void write_file(const std::filesystem::path& path, std::string_view text);

} // namespace solmut
