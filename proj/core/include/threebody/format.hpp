#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "threebody/precision.hpp"

namespace threebody {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_real(double x);
std::string format_real(const HighPrec& x, int digits = 17);
std::string format_rational(const BigRational& q);

/// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace threebody
