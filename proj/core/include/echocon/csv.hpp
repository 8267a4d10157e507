#pragma once

#include <string>
#include <vector>

namespace echocon {

/// Shortest round-trip decimal form of a double (printf %.17g trimmed).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);  // throws std::runtime_error on ragged rows

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace echocon
