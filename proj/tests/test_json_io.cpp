// Copyright 2026 The qkdcd Authors
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

#include <fstream>
#include <sstream>

#include "qkdcd/attacks.hpp"
#include "qkdcd/json_io.hpp"

using namespace qkdcd;

namespace {

json load_schema(const std::string& name) {
  const std::string path = std::string(QKDCD_SCHEMA_DIR) + "/" + name + ".schema.json";
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing schema file " << path);
  json j;
  in >> j;
  return j;
}

void expect_valid(const json& doc, const std::string& schema_name) {
  std::string why;
  const bool ok = validate_schema(doc, load_schema(schema_name), &why);
  CHECK_MESSAGE(ok, "schema " << schema_name << " rejected document: " << why);
}

json minimal_config() {
  return json{{"variant", "honest_center"}, {"encoding", "dephasing"}, {"n", 32}};
}

}  // namespace

TEST_CASE("complex values and matrices survive the JSON round trip") {
  const cplx z(1.25, -0.5);
  CHECK(complex_json(z) == json::array({1.25, -0.5}));

  Rng rng(5);
  const CMatrix m = random_unitary(4, rng);
  const CMatrix back = matrix_from_json(matrix_json(m));
  CHECK(back.max_abs_diff(m) == 0.0);

  CVector v(3);
  v[1] = cplx(0.0, 2.0);
  CHECK(vector_json(v)[1] == json::array({0.0, 2.0}));

  CHECK_THROWS_AS(matrix_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,2],[3,4]]")), ConfigError);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), ConfigError);
}

TEST_CASE("run configs apply documented defaults") {
  const RunConfig cfg = parse_run_config(minimal_config());
  CHECK(cfg.protocol.variant == Variant::honest_center);
  CHECK(cfg.protocol.encoding == EncodingName::dephasing);
  CHECK(cfg.protocol.n == 32);
  CHECK(cfg.protocol.m == 8);  // n / 4
  CHECK(cfg.protocol.threshold == 0.0);
  CHECK(cfg.protocol.noise.kind == NoiseKind::none);
  CHECK(cfg.protocol.noise.sampling == SamplingPolicy::per_leg);
  CHECK_FALSE(cfg.protocol.noise_seed.has_value());
  CHECK(cfg.protocol.attack.kind == AttackKind::none);
  CHECK(cfg.protocol.seed == 1);
  CHECK(cfg.sessions == 1);
  CHECK(cfg.verbosity == 1);

  // Noisy runs default to a small nonzero tolerance.
  json noisy = minimal_config();
  noisy["noise"] = json{{"kind", "dephasing"}};
  CHECK(parse_run_config(noisy).protocol.threshold == 0.02);

  json full = minimal_config();
  full["m"] = 5;
  full["threshold"] = 0.1;
  full["noise"] = json{{"kind", "rotation"}, {"sampling", "per_block"}, {"seed", 42}};
  full["attack"] = json{{"kind", "intercept_resend"}};
  full["seed"] = 9;
  full["sessions"] = 3;
  full["verbosity"] = 2;
  const RunConfig f = parse_run_config(full);
  CHECK(f.protocol.m == 5);
  CHECK(f.protocol.threshold == 0.1);
  CHECK(f.protocol.noise.sampling == SamplingPolicy::per_block);
  CHECK(f.protocol.noise_seed == 42);
  CHECK(f.protocol.attack.kind == AttackKind::intercept_resend);
  CHECK(f.sessions == 3);
  CHECK(f.verbosity == 2);
}

TEST_CASE("run configs reject unknown keys and bad values at every level") {
  json j = minimal_config();
  j["extra"] = 1;
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j["noise"] = json{{"kind", "rotation"}, {"oops", true}};
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j["attack"] = json{{"kind", "none"}, {"strength", 2}};
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j["n"] = "many";
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j["sessions"] = 0;
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j["verbosity"] = 3;
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  j = minimal_config();
  j.erase("encoding");
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);

  CHECK_THROWS_AS(parse_run_config(json::array()), ConfigError);

  // Structural validity is not enough: the protocol constraints still run.
  j = minimal_config();
  j["m"] = 32;
  CHECK_THROWS_AS(parse_run_config(j), ConfigError);
}

TEST_CASE("catalog documents match the published schema") {
  for (const EncodingName name : {EncodingName::single_photon, EncodingName::general4}) {
    const OperatorSet set = canonical_operator_set(name);
    const json doc = catalog_json(set, verify_flip_actions(set));
    expect_valid(doc, "operator_catalog");
    CHECK(doc.at("type") == "operator_catalog");
    CHECK(doc.at("dim") == set.encoding.dim);
    CHECK(doc.at("verification").at("all_pass") == true);
    CHECK(doc.at("operators").at("U").size() == set.encoding.dim);
    CHECK(doc.at("branch").at("u_phases").size() == set.encoding.dim);
  }
}

TEST_CASE("discrimination documents match the published schema") {
  const OperatorSet set = canonical_operator_set(EncodingName::rotation);
  const json doc = discrimination_json(set, analyze_operator_set(set, 0.25, 0.75));
  expect_valid(doc, "discrimination_report");
  CHECK(doc.at("priors") == json::array({0.25, 0.75}));
  CHECK(doc.at("pairs").size() == 6);
  CHECK(doc.at("identities").at("hold") == true);

  const json pair = pair_json("U", "C", set.U, set.C, 0.5, 0.5);
  expect_valid(pair, "pair_discrimination");
  CHECK(pair.at("r") == doctest::Approx(0.70710678118654752).epsilon(1e-12));
  CHECK(pair.at("relative_eigenvalues").size() == 4);
}

TEST_CASE("simulation documents carry sessions per verbosity level") {
  json base = minimal_config();
  base["sessions"] = 2;
  base["attack"] = json{{"kind", "intercept_resend"}};

  for (int verbosity = 0; verbosity <= 2; ++verbosity) {
    base["verbosity"] = verbosity;
    const RunConfig cfg = parse_run_config(base);
    const auto results = run_batch(cfg.protocol, cfg.sessions);
    const AttackReport rep = attack_report_from(cfg.protocol, results);
    const json doc = simulation_json(cfg, results, &rep, true);
    CAPTURE(verbosity);
    expect_valid(doc, "simulation_report");
    CHECK_FALSE(doc.contains("generated_at"));
    CHECK(doc.at("aggregate").contains("attack"));
    CHECK(doc.at("sessions").size() == (verbosity == 0 ? 0 : 2));
    if (verbosity == 2) {
      const json& tr = doc.at("sessions").at(0).at("transcript");
      CHECK(tr.at("A").get<std::string>().size() == 32);
      CHECK(tr.contains("eve_records"));
    } else if (verbosity == 1) {
      CHECK_FALSE(doc.at("sessions").at(0).contains("transcript"));
    }
  }

  // Without --reproducible a timestamp appears; the rest stays valid.
  base["verbosity"] = 0;
  const RunConfig cfg = parse_run_config(base);
  const auto results = run_batch(cfg.protocol, cfg.sessions);
  const json stamped = simulation_json(cfg, results, nullptr, false);
  expect_valid(stamped, "simulation_report");
  CHECK(stamped.contains("generated_at"));
  CHECK_FALSE(stamped.at("aggregate").contains("attack"));
}

TEST_CASE("identical runs serialize to identical bytes") {
  json base = minimal_config();
  base["sessions"] = 2;
  base["noise"] = json{{"kind", "dephasing"}};
  const RunConfig cfg = parse_run_config(base);
  const std::string a = dump_report(simulation_json(cfg, run_batch(cfg.protocol, 2),
                                                    nullptr, true));
  const std::string b = dump_report(simulation_json(cfg, run_batch(cfg.protocol, 2),
                                                    nullptr, true));
  CHECK(a == b);
  CHECK(a.back() == '\n');
}

TEST_CASE("CSV projection flattens the aggregate block") {
  json base = minimal_config();
  base["attack"] = json{{"kind", "intercept_resend"}};
  base["verbosity"] = 0;
  const RunConfig cfg = parse_run_config(base);
  const auto results = run_batch(cfg.protocol, 1);
  const AttackReport rep = attack_report_from(cfg.protocol, results);
  const std::string csv = aggregate_csv(simulation_json(cfg, results, &rep, true));

  std::istringstream lines(csv);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header.substr(0, 18) == "variant,encoding,n");
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
  CHECK(row.find("honest_center,dephasing,32,8,") == 0);

  // Without an attack the trailing statistics columns stay empty.
  json quiet = minimal_config();
  quiet["verbosity"] = 0;
  const RunConfig qc = parse_run_config(quiet);
  const std::string qcsv = aggregate_csv(simulation_json(qc, run_batch(qc.protocol, 1),
                                                         nullptr, true));
  CHECK(qcsv.find(",,") != std::string::npos);
}

TEST_CASE("schema validator enforces its keyword subset") {
  const json schema = json::parse(R"({
    "type": "object",
    "required": ["name", "count"],
    "additionalProperties": false,
    "properties": {
      "name": {"type": "string", "enum": ["a", "b"]},
      "count": {"type": "integer", "minimum": 0, "maximum": 10},
      "tags": {"type": "array", "items": {"type": "string"}, "minItems": 1, "maxItems": 2}
    }
  })");
  std::string why;

  CHECK(validate_schema(json{{"name", "a"}, {"count", 3}}, schema, &why));
  CHECK(validate_schema(json{{"name", "b"}, {"count", 0}, {"tags", json::array({"x"})}},
                        schema, &why));

  CHECK_FALSE(validate_schema(json{{"name", "a"}}, schema, &why));
  CHECK(why.find("count") != std::string::npos);
  CHECK_FALSE(validate_schema(json{{"name", "c"}, {"count", 3}}, schema, &why));
  CHECK_FALSE(validate_schema(json{{"name", "a"}, {"count", 11}}, schema, &why));
  CHECK_FALSE(validate_schema(json{{"name", "a"}, {"count", -1}}, schema, &why));
  CHECK_FALSE(validate_schema(json{{"name", "a"}, {"count", 3.5}}, schema, &why));
  CHECK_FALSE(validate_schema(json{{"name", "a"}, {"count", 3}, {"zzz", 0}}, schema, &why));
  CHECK(why.find("zzz") != std::string::npos);
  CHECK_FALSE(validate_schema(json{{"name", "a"}, {"count", 3}, {"tags", json::array()}},
                              schema, &why));
  CHECK_FALSE(validate_schema(
      json{{"name", "a"}, {"count", 3}, {"tags", json::array({"x", "y", "z"})}}, schema,
      &why));
  CHECK_FALSE(validate_schema(
      json{{"name", "a"}, {"count", 3}, {"tags", json::array({1})}}, schema, &why));
  CHECK(why.find("index 0") != std::string::npos);
}
