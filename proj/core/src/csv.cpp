#include "tielab/csv.hpp"

#include <cstdio>

#include "tielab/error.hpp"

namespace tielab::csv {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

Table read_table(const std::filesystem::path& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  Table table;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!saw_header) {
      std::string header = line;
      if (!header.empty() && header.back() == '\r') header.pop_back();
      if (header != expected_header) {
        throw ParseError("expected header '" + expected_header + "', got '" + header + "'",
                         line_no);
      }
      saw_header = true;
      continue;
    }
    if (line.empty() || line == "\r") continue;
    table.rows.push_back(split_row(line));
    table.line_numbers.push_back(line_no);
  }
  if (!saw_header) throw ParseError("empty file, missing header '" + expected_header + "'", 1);
  return table;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

void Writer::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) buffer_.push_back(',');
    buffer_ += fields[i];
  }
  buffer_.push_back('\n');
}

}  // namespace tielab::csv
