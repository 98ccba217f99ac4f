// Copyright 2026 The cqedlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cqed/experiments.hpp"
#include "cqed/master.hpp"

namespace cqed {

inline constexpr int csv_schema_version = 1;

// Written as "# key: value" lines after the schema and tool version lines.
using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

// Round-trippable, locale independent.
std::string format_number(double value);

std::string to_csv(const ExperimentResult& result, const CsvMetadata& meta);
std::string timeseries_to_csv(const TimeSeries& series, const CsvMetadata& meta);

// File name used for each result kind: emission.csv, absorb.csv, sweep.csv, fringe.csv.
std::string csv_file_name(const ExperimentResult& result);

void emit_csv(const ExperimentResult& result, const CsvMetadata& meta,
              const std::filesystem::path& path);
void emit_timeseries_csv(const TimeSeries& series, const CsvMetadata& meta,
                         const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace cqed
