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

#include "dmtmac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dmtmac/errors.hpp"
#include "dmtmac/fading.hpp"

namespace dmtmac {
namespace {

Json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw DomainError(std::string("field \"") + key + "\" has the wrong type");
  }
}

RealMatrix real_rows(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw DomainError(std::string(what) + " must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw DomainError(std::string(what) + ": ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw DomainError(std::string(what) + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void write_config_csv(std::ostream& os, const Json& config) {
  for (const auto& [key, value] : config.items())
    os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) {
  const RealMatrix re = real_rows(j.at("re"), "re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = real_rows(j.at("im"), "im");
    if (im.rows() != re.rows() || im.cols() != re.cols())
      throw DomainError("re and im have different shapes");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"re", re}, {"im", im}};
}

ComplexMatrix covariance_from_json(const Json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  if (j.contains("n") && field<int>(j, "n") != m.rows())
    throw DomainError("covariance: \"n\" does not match the matrix size");
  if (m.rows() != m.cols()) throw DomainError("covariance must be square");
  return m;
}

ComplexMatrix read_covariance_file(const std::filesystem::path& path) {
  return covariance_from_json(parse_file(path));
}

ChannelSpec spec_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const int users = field<int>(j, "users");
  const int mt = field<int>(j, "mt");
  const int mr = field<int>(j, "mr");
  ComplexMatrix cov;
  const Json cov_j = j.contains("cov") ? j.at("cov") : Json{{"preset", "iid"}};
  if (cov_j.contains("file")) {
    std::filesystem::path p = field<std::string>(cov_j, "file");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cov = read_covariance_file(p);
    if (j.contains("N") && field<int>(j, "N") != cov.rows())
      throw DomainError("spec: N does not match the covariance file");
  } else {
    const int n = field<int>(j, "N");
    const auto preset = field<std::string>(cov_j, "preset");
    const double a = cov_j.contains("a") ? field<double>(cov_j, "a") : 0.5;
    cov = correlation_preset(preset, n, a);
  }
  return ChannelSpec::make(users, mt, mr, cov);
}

ChannelSpec read_spec_file(const std::filesystem::path& path) {
  return spec_from_json(parse_file(path), path.parent_path());
}

Json spec_to_json(const ChannelSpec& spec) {
  return Json{{"users", spec.users}, {"mt", spec.tx_per_user}, {"mr", spec.rx},
              {"N", spec.block_len}, {"rho", spec.cov_rank}};
}

CodebookSet codebooks_from_json(const Json& j) {
  CodebookSet set;
  // Bare form: one array of codewords per user.
  if (j.is_array()) {
    for (const Json& u : j) {
      if (!u.is_array()) throw DomainError("codebook array: each user must be an array of codewords");
      UserCodebook book;
      for (const Json& w : u) book.codewords.push_back(matrix_from_json(w));
      set.users.push_back(std::move(book));
    }
    return set;
  }
  if (j.contains("snr_db")) set.snr = db_to_linear(field<double>(j, "snr_db"));
  if (!j.contains("users") || !j.at("users").is_array())
    throw DomainError("codebook file needs a \"users\" array");
  for (const Json& u : j.at("users")) {
    UserCodebook book;
    if (u.contains("rate")) book.rate = field<double>(u, "rate");
    for (const Json& w : u.at("codewords")) book.codewords.push_back(matrix_from_json(w));
    set.users.push_back(std::move(book));
  }
  return set;
}

CodebookSet read_codebook_file(const std::filesystem::path& path) {
  return codebooks_from_json(parse_file(path));
}

Json codebooks_to_json(const CodebookSet& set) {
  Json users = Json::array();
  for (const auto& b : set.users) {
    Json words = Json::array();
    for (const auto& w : b.codewords) words.push_back(matrix_to_json(w));
    users.push_back(Json{{"rate", b.rate}, {"codewords", std::move(words)}});
  }
  Json out = Json::object();
  if (set.snr > 0.0) out["snr_db"] = 10.0 * std::log10(set.snr);
  out["users"] = std::move(users);
  return out;
}

void Table::add(std::vector<Json> row) {
  if (row.size() != columns.size())
    throw ContractViolation("table " + name + ": row width does not match the header");
  rows.push_back(std::move(row));
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw DomainError("unknown format \"" + text + "\" (expected csv or json)");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_report(std::ostream& os, const Report& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json out = Json::object();
    out["config"] = report.config;
    Json tables = Json::object();
    for (const auto& t : report.tables) {
      Json rows = Json::array();
      for (const auto& r : t.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          const Json& v = r[c];
          // Non-finite doubles are not valid JSON numbers.
          obj[t.columns[c]] = (v.is_number_float() && !std::isfinite(v.get<double>()))
                                  ? Json(format_number(v.get<double>()))
                                  : v;
        }
        rows.push_back(std::move(obj));
      }
      tables[t.name] = std::move(rows);
    }
    out["tables"] = std::move(tables);
    out["notes"] = report.notes;
    os << out.dump(2) << "\n";
    return;
  }
  write_config_csv(os, report.config);
  for (const auto& note : report.notes) os << "# note: " << note << "\n";
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) os << "\n";
    first = false;
    os << "# table: " << t.name << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_cell(r[c]);
      os << "\n";
    }
  }
}

}  // namespace dmtmac
