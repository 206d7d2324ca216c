// Output conventions shared by the CLI and report writers: CSV always has a
// header row, floats carry 12 significant digits, counts are exact integers,
// rationals are "num/den" strings. LF line endings, UTF-8.
#ifndef EXPSUM_IO_HPP
#define EXPSUM_IO_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "expsum/modarith.hpp"

namespace expsum {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string join_u64(const std::vector<u64>& values, const std::string& sep) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (u64 v : values) parts.push_back(std::to_string(v));
  return join(parts, sep);
}

struct CsvWriter {
  std::ostringstream out;
  bool header_written = false;

  void header(const std::vector<std::string>& cols) {
    out << join(cols, ",") << "\n";
    header_written = true;
  }
  void row(const std::vector<std::string>& cells) { out << join(cells, ",") << "\n"; }
  std::string str() const { return out.str(); }
};

}  // namespace expsum

#endif  // EXPSUM_IO_HPP
