#ifndef TIELAB_CSV_HPP
#define TIELAB_CSV_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tielab::csv {

// Splits one line on commas. The file formats here never quote fields.
std::vector<std::string> split_row(const std::string& line);

// Reads all rows of a CSV file and checks the header matches exactly.
// Rows are returned without the header; blank lines are skipped.
struct Table {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
};
Table read_table(const std::filesystem::path& path, const std::string& expected_header);

// Round-trip-safe, locale-independent float formatting for result files.
std::string format_double(double value);

class Writer {
 public:
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return buffer_; }

 private:
  std::string buffer_;
};

}  // namespace tielab::csv

#endif  // TIELAB_CSV_HPP
