#include "lrmem/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "lrmem/errors.hpp"

namespace lrmem {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_number(std::string_view field, double& value) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

}  // namespace

MultivariateSeries parse_series_csv(std::string_view text) {
  std::vector<double> rows;
  std::size_t q = 0;
  std::size_t n = 0;
  std::size_t line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    for (auto& f : fields) {
      if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    }
    std::vector<double> vals(fields.size());
    std::size_t bad = fields.size();
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], vals[c])) {
        bad = c;
        break;
      }
    }
    if (first) {
      first = false;
      q = fields.size();
      if (bad != fields.size()) continue;  // header row
    }
    if (fields.size() != q) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << q << " columns, found " << fields.size();
      throw DataError(msg.str());
    }
    if (bad != fields.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ", column " << bad + 1 << ": non-numeric value '" << fields[bad] << "'";
      throw DataError(msg.str());
    }
    for (std::size_t c = 0; c < q; ++c) {
      if (!std::isfinite(vals[c])) {
        std::ostringstream msg;
        msg << "line " << line_no << ", column " << c + 1 << ": non-finite value";
        throw DataError(msg.str());
      }
    }
    rows.insert(rows.end(), vals.begin(), vals.end());
    ++n;
  }
  if (n == 0) throw DataError("CSV input contains no data rows");
  if (n < 2) throw DataError("CSV input needs at least 2 data rows");
  return MultivariateSeries::from_rows(n, q, rows);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

MultivariateSeries read_series_csv(const std::string& path) { return parse_series_csv(read_text_file(path)); }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_series_csv(const MultivariateSeries& series) {
  std::string out;
  out.reserve(series.rows() * series.cols() * 24);
  for (std::size_t t = 0; t < series.rows(); ++t) {
    for (std::size_t i = 0; i < series.cols(); ++i) {
      if (i) out += ',';
      out += format_double(series(t, i));
    }
    out += '\n';
  }
  return out;
}

}  // namespace lrmem
