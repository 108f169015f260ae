#pragma once

#include <string>
#include <vector>

namespace xxz::app {

// Fixed-point, '.' separator, independent of the C and C++ locales.
// Negative zero prints as zero.
std::string fixed(double v, int precision);
// Scientific with the given number of fractional digits.
std::string scientific(double v, int digits = 3);

// Numeric CSV: comma separated, header row, LF endings, no quoting.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace xxz::app
