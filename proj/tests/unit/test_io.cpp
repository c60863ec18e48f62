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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmtmac/errors.hpp"
#include "dmtmac/io.hpp"
#include "generators.hpp"

using namespace dmtmac;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "dmtmac_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("matrix json roundtrip") {
  RngStream rng(51, 0);
  const ComplexMatrix m = gen::matrix(rng, 2, 3);
  const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);
  const ComplexMatrix real_only = matrix_from_json(Json::parse(R"({"re": [[1, 2]]})"));
  CHECK(real_only.rows() == 1);
  CHECK(real_only(0, 1) == Complex(2, 0));
}

TEST_CASE("codebook json roundtrip keeps rates and snr") {
  RngStream rng(52, 0);
  CodebookSet set;
  set.snr = 1000.0;
  for (int u = 0; u < 2; ++u) {
    UserCodebook book;
    book.rate = 0.25 * (u + 1);
    for (int k = 0; k < 3; ++k) book.codewords.push_back(gen::matrix(rng, 1, 2) * 0.3);
    set.users.push_back(book);
  }
  const CodebookSet back = codebooks_from_json(codebooks_to_json(set));
  REQUIRE(back.users.size() == 2);
  CHECK(back.snr == doctest::Approx(1000.0));
  CHECK(back.users[1].rate == 0.5);
  for (int u = 0; u < 2; ++u)
    for (int k = 0; k < 3; ++k)
      CHECK((back.users[u].codewords[k] - set.users[u].codewords[k]).norm() < 1e-12);
}

TEST_CASE("bare codebook form") {
  const Json j = Json::parse(R"([[{"re": [[1, 0]]}, {"re": [[0, 1]]}], [{"re": [[0, 0]], "im": [[1, 0]]}]])");
  const CodebookSet set = codebooks_from_json(j);
  REQUIRE(set.users.size() == 2);
  CHECK(set.users[0].codewords.size() == 2);
  CHECK(set.users[1].codewords[0](0, 0) == Complex(0, 1));
  CHECK_THROWS(codebooks_from_json(Json::parse("42")));
}

TEST_CASE("spec parsing with presets and files") {
  const ChannelSpec s = spec_from_json(Json::parse(
      R"({"users": 2, "mt": 1, "mr": 2, "N": 3, "cov": {"preset": "exponential", "a": 0.5}})"));
  CHECK(s.users == 2);
  CHECK(s.block_len == 3);
  CHECK(s.cov_rank == 3);
  CHECK(s.covariance(0, 2).real() == doctest::Approx(0.25));

  const auto dir = scratch_dir();
  {
    std::ofstream(dir / "cov.json") << R"({"n": 2, "re": [[1, 1], [1, 1]]})";
    std::ofstream(dir / "spec.json")
        << R"({"users": 3, "mt": 2, "mr": 4, "N": 2, "cov": {"file": "cov.json"}})";
  }
  const ChannelSpec f = read_spec_file(dir / "spec.json");
  CHECK(f.users == 3);
  CHECK(f.cov_rank == 1);
  const Json echoed = spec_to_json(f);
  CHECK(echoed["rho"] == 1);
  CHECK(echoed["mr"] == 4);
}

TEST_CASE("bad covariances are rejected") {
  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"n": 3, "re": [[1, 0], [0, 1]]})")), DomainError);
  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"re": [[1, 0, 0], [0, 1, 0]]})")), DomainError);
  const Json not_psd = Json::parse(
      R"({"users": 1, "mt": 1, "mr": 1, "N": 2, "cov": {"file": "missing.json"}})");
  CHECK_THROWS(spec_from_json(not_psd, scratch_dir()));
  const auto dir = scratch_dir();
  std::ofstream(dir / "bad.json") << R"({"n": 2, "re": [[1, 2], [2, 1]]})";
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"users": 1, "mt": 1, "mr": 1, "N": 2, "cov": {"file": "bad.json"}})"),
                                 dir),
                  ContractViolation);
  CHECK_THROWS(spec_from_json(Json::parse(R"({"users": 1, "mt": 1, "mr": 1, "N": 2, "cov": {"preset": "wavy"}})")));
}

TEST_CASE("report writers") {
  Report r;
  r.config["seed"] = 7;
  r.config["users"] = 2;
  Table t{"estimates", {"snr_db", "p_hat", "label"}, {}};
  t.add({20.0, 0.125, "a,b"});
  t.add({25.0, std::nan(""), "c"});
  r.tables.push_back(t);
  r.notes.push_back("hello");

  std::ostringstream csv;
  write_report(csv, r, OutputFormat::csv);
  const std::string c = csv.str();
  CHECK(c.find("# seed: 7") != std::string::npos);
  CHECK(c.find("# note: hello") != std::string::npos);
  CHECK(c.find("snr_db,p_hat,label") != std::string::npos);
  CHECK(c.find("20,0.125,\"a,b\"") != std::string::npos);
  CHECK(c.find("nan") != std::string::npos);

  std::ostringstream js;
  write_report(js, r, OutputFormat::json);
  const Json j = Json::parse(js.str());
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["tables"]["estimates"][0]["p_hat"] == 0.125);
  CHECK(j["tables"]["estimates"][1]["p_hat"].is_string());
  CHECK(j["notes"][0] == "hello");

  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_THROWS(parse_format("xml"));
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}
