#ifndef GRADECAST_SRC_TEXT_UTIL_HPP
#define GRADECAST_SRC_TEXT_UTIL_HPP

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "gradecast/errors.hpp"

namespace gradecast::detail {

/// Shortest round-trip decimal form of a double (std::to_chars), so text
/// artifacts are byte-stable and parse back to the same value.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw data_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw data_error("cannot write file: " + path);
  }
  out << text;
}

/// Lowercase identifier made of [a-z0-9_], used for artifact file names.
inline std::string slugify(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (unsigned char ch : name) {
    if (std::isalnum(ch)) {
      out.push_back(static_cast<char>(std::tolower(ch)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "model" : out;
}

}  // namespace gradecast::detail

#endif
