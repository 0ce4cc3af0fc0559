#pragma once

// Locale-independent CSV helpers. Numbers use the shortest decimal form
// that round-trips to the same double.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lambdadyn {

std::string format_double(double v);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  /// `# text` metadata line.
  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);
  /// Cells are written verbatim; quote free text with csv_field first.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace lambdadyn
