#ifndef LRMEM_CSV_HPP
#define LRMEM_CSV_HPP

#include <string>
#include <string_view>

#include "lrmem/core.hpp"

namespace lrmem {

/// Parses comma-separated numeric text into a series. A first row containing
/// any non-numeric field is taken as a header. Data errors name the offending
/// 1-based line and column.
MultivariateSeries parse_series_csv(std::string_view text);

MultivariateSeries read_series_csv(const std::string& path);

/// One row per time point, 17 significant digits, '\n' line endings, no header.
std::string format_series_csv(const MultivariateSeries& series);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

/// "%.17g"
std::string format_double(double x);

}  // namespace lrmem

#endif  // LRMEM_CSV_HPP
