// Copyright 2026 The dmtmac Authors
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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmtmac/criteria.hpp"
#include "dmtmac/dmt.hpp"

namespace dmtmac {

using Json = nlohmann::ordered_json;

/// {"n": N, "re": [[...]], "im": [[...]]}; "im" may be omitted.
ComplexMatrix covariance_from_json(const Json& j);
ComplexMatrix read_covariance_file(const std::filesystem::path& path);

/// {"users": U, "mt": .., "mr": .., "N": .., "cov": {"preset": "iid"|"flat"|
/// "exponential", "a": ..} | {"file": path}}. Relative files resolve
/// against `base_dir`.
ChannelSpec spec_from_json(const Json& j, const std::filesystem::path& base_dir = {});
ChannelSpec read_spec_file(const std::filesystem::path& path);
Json spec_to_json(const ChannelSpec& spec);

/// {"snr_db": optional, "users": [{"rate": r, "codewords": [{"re": [[..]],
/// "im": [[..]]}, ...]}, ...]}, or the bare form [[codeword, ...], ...].
CodebookSet codebooks_from_json(const Json& j);
CodebookSet read_codebook_file(const std::filesystem::path& path);
Json codebooks_to_json(const CodebookSet& set);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Cells are JSON scalars; CSV renders numbers with 12 significant digits.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row);
};

/// Output of one command: the resolved configuration, tables and notes.
struct Report {
  Json config = Json::object();
  std::vector<Table> tables;
  std::vector<std::string> notes;
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);
std::string format_number(double x);
void write_report(std::ostream& os, const Report& report, OutputFormat format);

}  // namespace dmtmac
