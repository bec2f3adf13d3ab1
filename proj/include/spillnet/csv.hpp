#pragma once

#include <string>
#include <vector>

namespace spillnet {

/// Minimal CSV support: comma-separated, header row, no embedded commas.
/// Lines are split on '\n' with trailing '\r' stripped; a UTF-8 BOM on the
/// first line is ignored.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

/// Formats a double with "%.12g" so numeric output is byte-stable across
/// runs and thread counts.
std::string format_number(double v);

/// Joins fields with commas and appends '\n'.
std::string csv_line(const std::vector<std::string>& fields);

/// Parses a decimal number; throws std::invalid_argument with `context`
/// in the message if the full field does not parse.
double parse_number(const std::string& field, const std::string& context);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace spillnet
