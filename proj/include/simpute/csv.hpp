#pragma once
// CSV ingestion and emission with missing-value tokens.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "simpute/table.hpp"

namespace simpute {

struct CsvSchema {
  char delimiter = ',';
  std::vector<std::string> na_tokens = {"NA", "", "NaN"};
  bool header = true;
  int precision = 10;  // significant digits on output
};

struct LoadedTable {
  CompositionalTable table;
  WarningLog warnings;
};

// NA tokens become masked cells; rows are re-closed per the ingestion
// policy. CRLF and a trailing newline are accepted. Errors: parse_error
// (ragged or non-numeric rows, empty file), negative_value.
LoadedTable read_table(const std::filesystem::path& path,
                       const CsvSchema& schema = {});
LoadedTable read_table_text(std::string_view text, const CsvSchema& schema = {});

std::string table_to_csv(const CompositionalTable& table,
                         const CsvSchema& schema = {});
void write_table(const CompositionalTable& table,
                 const std::filesystem::path& path, const CsvSchema& schema = {});

}  // namespace simpute
