/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string>
#include <vector>

namespace dfusion {

// Plain comma-separated tables: no quoting, so cells may not contain commas
// or line breaks. Blank lines are skipped and a trailing CR is dropped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

std::vector<std::string> SplitCsvLine(const std::string& line);

// Throws DataError on a missing file, an empty file or a row whose width
// differs from the header.
CsvTable ReadCsv(const std::string& path);

// `where` prefixes error messages.
double ParseDoubleCell(const std::string& cell, const std::string& where);
long long ParseIntCell(const std::string& cell, const std::string& where);
// "0" or "1".
int ParseLabelCell(const std::string& cell, const std::string& where);

// %.17g, enough digits to round-trip a double.
std::string FormatDouble(double v);

// Throws InvalidArgument if the cell would need quoting.
void CheckCsvCell(const std::string& cell);

}  // namespace dfusion
