#pragma once

#include <filesystem>
#include <string>

namespace tayrem {

// 17-significant-digit decimal form; re-parsing recovers the exact double.
std::string format_full(double v);

// Writes through a temp file in the same directory, then renames into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tayrem
