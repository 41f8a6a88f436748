#include "rvcal/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace rvcal::cli {
namespace {

std::string format(const char* fmt, double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, fmt, v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace

std::string format_raw(double v) { return format("%.17g", v); }
std::string format_summary(double v) { return format("%.6g", v); }

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
  }
}

}  // namespace rvcal::cli
