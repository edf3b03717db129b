#include "simpute/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace simpute {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool is_na(std::string_view token, const std::vector<std::string>& na_tokens) {
  return std::find(na_tokens.begin(), na_tokens.end(), token) !=
         na_tokens.end();
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t at = line.find(delimiter, begin);
    if (at == std::string_view::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, at - begin));
    begin = at + 1;
  }
  return out;
}

double parse_number(std::string_view token, std::size_t line_no,
                    std::size_t col) {
  std::string buf(token);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty() || errno == ERANGE ||
      !std::isfinite(v))
    fail(errc::parse_error, "line " + std::to_string(line_no) + ", column " +
                                std::to_string(col + 1) +
                                ": not a number or NA token: '" + buf + "'");
  if (v < 0.0)
    fail(errc::negative_value, "line " + std::to_string(line_no) +
                                   ", column " + std::to_string(col + 1) +
                                   ": negative value " + buf);
  return v;
}

void format_value(std::string& out, double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  out += buf;
}

}  // namespace

LoadedTable read_table_text(std::string_view text, const CsvSchema& schema) {
  if (schema.na_tokens.empty())
    fail(errc::invalid_argument, "NA token set must not be empty");

  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t at = text.find('\n', begin);
    if (at == std::string_view::npos) {
      lines.push_back(text.substr(begin));
      break;
    }
    lines.push_back(text.substr(begin, at - begin));
    begin = at + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) fail(errc::empty_input, "empty CSV input");

  std::size_t line_no = 0;
  std::vector<std::string> names;
  if (schema.header) {
    for (auto token : split(lines[0], schema.delimiter))
      names.emplace_back(trim(token));
    ++line_no;
  }
  if (line_no >= lines.size())
    fail(errc::empty_input, "CSV input has a header but no data rows");

  const std::size_t cols =
      schema.header ? names.size() : split(lines[line_no], schema.delimiter).size();
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  std::size_t rows = 0;
  for (; line_no < lines.size(); ++line_no) {
    const auto tokens = split(lines[line_no], schema.delimiter);
    if (tokens.size() != cols)
      fail(errc::parse_error,
           "line " + std::to_string(line_no + 1) + ": expected " +
               std::to_string(cols) + " fields, found " +
               std::to_string(tokens.size()));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto token = trim(tokens[j]);
      if (is_na(token, schema.na_tokens)) {
        values.push_back(0.0);
        mask.push_back(0);
      } else {
        values.push_back(parse_number(token, line_no + 1, j));
        mask.push_back(1);
      }
    }
    ++rows;
  }

  WarningLog warnings;
  auto table = CompositionalTable::make(std::move(values), std::move(mask),
                                        rows, cols, std::move(names),
                                        &warnings);
  return LoadedTable{std::move(table), std::move(warnings)};
}

LoadedTable read_table(const std::filesystem::path& path,
                       const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(errc::io_error, "cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_table_text(buf.str(), schema);
}

std::string table_to_csv(const CompositionalTable& table,
                         const CsvSchema& schema) {
  if (schema.na_tokens.empty())
    fail(errc::invalid_argument, "NA token set must not be empty");
  const std::string& na = schema.na_tokens.front();
  std::string out;
  if (schema.header) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (j) out += schema.delimiter;
      out += table.column_names()[j];
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (j) out += schema.delimiter;
      if (table.observed(i, j))
        format_value(out, table.value(i, j),
                     schema.precision > 0 ? schema.precision : 10);
      else
        out += na;
    }
    out += '\n';
  }
  return out;
}

void write_table(const CompositionalTable& table,
                 const std::filesystem::path& path, const CsvSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail(errc::io_error, "cannot open " + path.string() + " for writing");
  out << table_to_csv(table, schema);
  if (!out) fail(errc::io_error, "failed writing " + path.string());
}

}  // namespace simpute
