#include "trimedge_cli/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "trimedge/errors.hpp"

namespace trimedge::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<double> parse_sample_text(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '+') line.remove_prefix(1);

    double v = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || end != line.data() + line.size()) {
      throw InvalidArgument(fmt::format("line {}: cannot parse '{}' as a real number", line_no, line));
    }
    if (!std::isfinite(v)) {
      throw InvalidArgument(fmt::format("line {}: value is not finite", line_no));
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> read_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open sample file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sample_text(buf.str());
}

void write_sample_file(const std::filesystem::path& path, std::span<const double> values,
                       std::span<const std::string> header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& h : header) out << "# " << h << '\n';
  for (double v : values) out << fmt::format("{}\n", v);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace trimedge::cli
