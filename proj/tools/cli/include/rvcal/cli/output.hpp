#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace rvcal::cli {

/// Round-trip precision for raw records.
std::string format_raw(double v);
/// Six significant digits for summaries.
std::string format_summary(double v);

/// Writes `content` to a sibling temp file, then renames it over `path`.
/// Readers never observe a partially written file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rvcal::cli
