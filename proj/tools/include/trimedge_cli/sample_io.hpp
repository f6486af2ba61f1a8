#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trimedge::cli {

/// One real per line; blank lines and text after '#' are ignored. Parsing is
/// locale independent. Throws InvalidArgument naming the offending line.
std::vector<double> parse_sample_text(std::string_view text);
std::vector<double> read_sample_file(const std::filesystem::path& path);

/// Writes values in shortest round-trip form, preceded by `header` lines as
/// comments.
void write_sample_file(const std::filesystem::path& path, std::span<const double> values,
                       std::span<const std::string> header = {});

}  // namespace trimedge::cli
