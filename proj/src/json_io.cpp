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

#include "qkdcd/json_io.hpp"

#include <chrono>
#include <ctime>
#include <initializer_list>
#include <sstream>

#include "qkdcd/version.hpp"

namespace qkdcd {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* context) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError(std::string("unknown key '") + item.key() + "' in " + context);
  }
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ConfigError(std::string("missing or non-integer '") + key + "'");
  return j.at(key).get<int>();
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ConfigError(std::string("missing or non-string '") + key + "'");
  return j.at(key).get<std::string>();
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_echo(const RunConfig& cfg) {
  json noise;
  noise["kind"] = to_string(cfg.protocol.noise.kind);
  noise["sampling"] = to_string(cfg.protocol.noise.sampling);
  if (cfg.protocol.noise_seed) noise["seed"] = *cfg.protocol.noise_seed;
  json j;
  j["variant"] = to_string(cfg.protocol.variant);
  j["encoding"] = to_string(cfg.protocol.encoding);
  j["n"] = cfg.protocol.n;
  j["m"] = cfg.protocol.m;
  j["threshold"] = cfg.protocol.threshold;
  j["noise"] = noise;
  j["attack"] = json{{"kind", to_string(cfg.protocol.attack.kind)}};
  j["seed"] = cfg.protocol.seed;
  j["sessions"] = cfg.sessions;
  j["verbosity"] = cfg.verbosity;
  return j;
}

}  // namespace

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json vector_json(const CVector& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(complex_json(v[i]));
  return a;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const json& first = j.at(0);
  if (!first.is_array() || first.empty()) throw ConfigError("matrix rows must be non-empty arrays");
  const std::size_t cols = first.size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw ConfigError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = row.at(c);
      if (!z.is_array() || z.size() != 2 || !z.at(0).is_number() || !z.at(1).is_number())
        throw ConfigError("matrix entries must be [re, im] number pairs");
      m.at(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  check_keys(j,
             {"variant", "encoding", "n", "m", "threshold", "noise", "attack", "seed",
              "sessions", "verbosity"},
             "config");

  RunConfig cfg;
  cfg.protocol.variant = variant_from_string(require_string(j, "variant"));
  cfg.protocol.encoding = encoding_from_string(require_string(j, "encoding"));
  cfg.protocol.n = require_int(j, "n");

  if (j.contains("noise")) {
    const json& nj = j.at("noise");
    if (!nj.is_object()) throw ConfigError("'noise' must be an object");
    check_keys(nj, {"kind", "sampling", "seed"}, "noise");
    cfg.protocol.noise.kind = noise_from_string(require_string(nj, "kind"));
    if (nj.contains("sampling"))
      cfg.protocol.noise.sampling = sampling_from_string(require_string(nj, "sampling"));
    if (nj.contains("seed")) {
      if (!nj.at("seed").is_number_unsigned() && !nj.at("seed").is_number_integer())
        throw ConfigError("noise seed must be an integer");
      cfg.protocol.noise_seed = nj.at("seed").get<std::uint64_t>();
    }
  }

  if (j.contains("attack")) {
    const json& aj = j.at("attack");
    if (!aj.is_object()) throw ConfigError("'attack' must be an object");
    check_keys(aj, {"kind"}, "attack");
    cfg.protocol.attack.kind = attack_from_string(require_string(aj, "kind"));
  }

  cfg.protocol.m = j.contains("m") ? require_int(j, "m") : std::max(1, cfg.protocol.n / 4);
  if (j.contains("threshold")) {
    if (!j.at("threshold").is_number()) throw ConfigError("'threshold' must be a number");
    cfg.protocol.threshold = j.at("threshold").get<double>();
  } else {
    cfg.protocol.threshold = cfg.protocol.noise.kind == NoiseKind::none ? 0.0 : 0.02;
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw ConfigError("'seed' must be an integer");
    cfg.protocol.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("sessions")) cfg.sessions = require_int(j, "sessions");
  if (cfg.sessions <= 0) throw ConfigError("'sessions' must be positive");
  if (j.contains("verbosity")) cfg.verbosity = require_int(j, "verbosity");
  if (cfg.verbosity < 0 || cfg.verbosity > 2) throw ConfigError("'verbosity' must be 0, 1 or 2");

  cfg.protocol.validate();
  return cfg;
}

json catalog_json(const OperatorSet& set, const FlipActionReport& verification) {
  json j;
  j["type"] = "operator_catalog";
  j["version"] = kVersion;
  j["encoding"] = to_string(set.encoding.name);
  j["recipe"] = to_string(set.recipe);
  j["physical_qubits"] = set.encoding.physical_qubits;
  j["dim"] = set.encoding.dim;
  j["noise_class"] = to_string(set.encoding.noise_class);

  json bases;
  bases["z"] = json::array({vector_json(set.encoding.z0), vector_json(set.encoding.z1)});
  bases["x"] = json::array({vector_json(set.encoding.x0), vector_json(set.encoding.x1)});
  j["bases"] = bases;

  json ops;
  ops["I"] = matrix_json(set.I);
  ops["U"] = matrix_json(set.U);
  ops["C"] = matrix_json(set.C);
  ops["UC"] = matrix_json(set.UC);
  j["operators"] = ops;

  json branch;
  branch["complement_dim"] = set.encoding.dim - 2;
  branch["u_phases"] = set.u_phases;
  branch["c_phases"] = set.c_phases;
  j["branch"] = branch;

  json actions = json::array();
  for (const FlipAction& a : verification.actions) {
    json aj;
    aj["op"] = to_string(a.op);
    aj["input"] = a.input;
    aj["target"] = a.target;
    aj["phase"] = complex_json(a.phase);
    aj["residual"] = a.residual;
    aj["pass"] = a.pass;
    actions.push_back(aj);
  }
  j["verification"] = json{{"all_pass", verification.all_pass}, {"actions", actions}};
  return j;
}

json discrimination_json(const OperatorSet& set, const DiscriminationReport& rep) {
  json j;
  j["type"] = "discrimination_report";
  j["version"] = kVersion;
  j["encoding"] = to_string(set.encoding.name);
  j["recipe"] = to_string(set.recipe);
  j["priors"] = json::array({rep.p1, rep.p2});

  json pairs = json::array();
  for (const PairResult& p : rep.pairs) {
    json pj;
    pj["a"] = to_string(p.a);
    pj["b"] = to_string(p.b);
    pj["r"] = p.r;
    pj["p_error_min"] = p.p_error_min;
    pj["precisely_discriminable"] = p.precisely_discriminable;
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;

  const char* names[4] = {"I", "U", "C", "UC"};
  json unamb;
  json eigs;
  for (int i = 0; i < 4; ++i) {
    unamb[names[i]] = rep.unambiguous[i];
    json list = json::array();
    for (const cplx& z : rep.eigenvalues[i]) list.push_back(complex_json(z));
    eigs[names[i]] = list;
  }
  j["unambiguous"] = unamb;
  j["eigenvalues"] = eigs;

  json ident;
  ident["r_c"] = rep.r_c;
  ident["r_i_c"] = rep.r_i_c;
  ident["r_u_uc"] = rep.r_u_uc;
  ident["r_c_dag"] = rep.r_c_dag;
  ident["r_u_c"] = rep.r_u_c;
  ident["hold"] = rep.identities_hold;
  j["identities"] = ident;
  return j;
}

json pair_json(const std::string& name_a, const std::string& name_b, const CMatrix& a,
               const CMatrix& b, double p1, double p2) {
  const double p_err = min_error_probability(a, b, p1, p2);
  const CMatrix rel = a.adjoint() * b;
  const double r = eigenvalue_hull_distance(rel);
  json j;
  j["type"] = "pair_discrimination";
  j["version"] = kVersion;
  j["a"] = name_a;
  j["b"] = name_b;
  j["priors"] = json::array({p1, p2});
  j["r"] = r;
  j["p_error_min"] = p_err;
  j["precisely_discriminable"] = r <= 1e-10;
  json eigs = json::array();
  for (const cplx& z : spectral_decompose(rel).eigenvalues) eigs.push_back(complex_json(z));
  j["relative_eigenvalues"] = eigs;
  return j;
}

json simulation_json(const RunConfig& cfg, const std::vector<SessionResult>& sessions,
                     const AttackReport* attack, bool reproducible) {
  const BatchSummary sum = summarize(sessions);

  json j;
  j["type"] = "simulation_report";
  j["version"] = kVersion;
  if (!reproducible) j["generated_at"] = utc_timestamp();
  j["config"] = config_echo(cfg);

  json agg;
  agg["sessions"] = sum.sessions;
  agg["abort_fraction"] = sum.abort_fraction;
  agg["mean_qber"] = sum.mean_qber;
  agg["mean_check_error_rate"] = sum.mean_check_error_rate;
  agg["key_rate"] = sum.key_rate;
  agg["keys_match_fraction"] = sum.keys_match_fraction;
  if (attack != nullptr) {
    json aj;
    aj["check_events"] = attack->check_events;
    aj["detection"] = json{{"observed", attack->per_check_detection.p},
                           {"sigma", attack->per_check_detection.sigma},
                           {"ci3", json::array({attack->per_check_detection.lo3,
                                                attack->per_check_detection.hi3})}};
    aj["oracle_available"] = attack->oracle_available;
    if (attack->oracle_available) aj["oracle_detection"] = attack->oracle_detection;
    aj["eve_information"] = attack->eve_information;
    aj["guess_accuracy"] = attack->guess_accuracy;
    aj["induced_qber"] = attack->induced_qber;
    agg["attack"] = aj;
  }
  j["aggregate"] = agg;

  json slist = json::array();
  if (cfg.verbosity >= 1) {
    for (std::size_t i = 0; i < sessions.size(); ++i) {
      const SessionResult& r = sessions[i];
      json sj;
      sj["index"] = i;
      sj["seed"] = Rng::derive(cfg.protocol.seed, static_cast<std::uint64_t>(i));
      sj["aborted"] = r.aborted;
      sj["check_error_rate"] = r.check_error_rate;
      sj["qber"] = r.qber;
      sj["key_rate"] = r.key_rate;
      sj["keys_match"] = r.keys_match;
      sj["raw_key_bits"] = bits_to_string(r.raw_key);
      if (cfg.verbosity >= 2) {
        const ProtocolTranscript& tr = r.transcript;
        json tj;
        tj["A"] = bits_to_string(tr.A);
        tj["A_prime"] = bits_to_string(tr.Aprime);
        if (!tr.B.empty()) tj["B"] = bits_to_string(tr.B);
        if (!tr.Bprime.empty()) tj["B_prime"] = bits_to_string(tr.Bprime);
        if (!tr.permutation.empty()) tj["permutation"] = tr.permutation;
        tj["check_positions"] = tr.check_positions;
        if (!tr.announced_ops.empty()) {
          json checks = json::array();
          for (const CheckRecord& c : tr.announced_ops) {
            json cj;
            cj["position"] = c.position;
            cj["alice_bit"] = c.alice_bit;
            if (c.bob_bit >= 0) cj["bob_bit"] = c.bob_bit;
            cj["decoded"] = c.decoded;
            cj["error"] = c.error;
            checks.push_back(cj);
          }
          tj["checks"] = checks;
        }
        tj["center_outcomes"] = tr.center_outcomes;
        tj["messages"] = tr.messages;
        if (!tr.eve_records.empty()) {
          json evs = json::array();
          for (const EveRecord& e : tr.eve_records) {
            evs.push_back(json{{"position", e.position},
                               {"true_a", e.true_a},
                               {"guessed_a", e.guessed_a},
                               {"true_op", to_string(e.true_op)},
                               {"guessed_op", to_string(e.guessed_op)}});
          }
          tj["eve_records"] = evs;
        }
        sj["transcript"] = tj;
      }
      slist.push_back(sj);
    }
  }
  j["sessions"] = slist;
  return j;
}

std::string aggregate_csv(const json& report) {
  const json& cfg = report.at("config");
  const json& agg = report.at("aggregate");
  const bool has_attack = agg.contains("attack");
  const json empty;

  auto cell = [](const json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  auto opt = [&](const json& obj, const char* key) -> json {
    return obj.contains(key) ? obj.at(key) : json();
  };

  std::ostringstream head, row;
  const std::pair<const char*, json> cols[] = {
      {"variant", cfg.at("variant")},
      {"encoding", cfg.at("encoding")},
      {"n", cfg.at("n")},
      {"m", cfg.at("m")},
      {"threshold", cfg.at("threshold")},
      {"noise_kind", cfg.at("noise").at("kind")},
      {"noise_sampling", cfg.at("noise").at("sampling")},
      {"attack_kind", cfg.at("attack").at("kind")},
      {"seed", cfg.at("seed")},
      {"sessions", agg.at("sessions")},
      {"abort_fraction", agg.at("abort_fraction")},
      {"mean_qber", agg.at("mean_qber")},
      {"mean_check_error_rate", agg.at("mean_check_error_rate")},
      {"key_rate", agg.at("key_rate")},
      {"keys_match_fraction", agg.at("keys_match_fraction")},
      {"check_events", has_attack ? agg.at("attack").at("check_events") : empty},
      {"detection_observed",
       has_attack ? agg.at("attack").at("detection").at("observed") : empty},
      {"detection_sigma", has_attack ? agg.at("attack").at("detection").at("sigma") : empty},
      {"oracle_detection", has_attack ? opt(agg.at("attack"), "oracle_detection") : empty},
      {"eve_information", has_attack ? agg.at("attack").at("eve_information") : empty},
      {"guess_accuracy", has_attack ? agg.at("attack").at("guess_accuracy") : empty},
      {"induced_qber", has_attack ? agg.at("attack").at("induced_qber") : empty},
  };
  bool first = true;
  for (const auto& [name, value] : cols) {
    if (!first) {
      head << ',';
      row << ',';
    }
    head << name;
    row << cell(value);
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

bool validate_schema(const json& doc, const json& schema, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };

  if (schema.contains("type")) {
    const auto matches = [&](const std::string& t) {
      if (t == "object") return doc.is_object();
      if (t == "array") return doc.is_array();
      if (t == "string") return doc.is_string();
      if (t == "number") return doc.is_number();
      if (t == "integer") return doc.is_number_integer();
      if (t == "boolean") return doc.is_boolean();
      if (t == "null") return doc.is_null();
      return false;
    };
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_array()) {
      for (const auto& x : t) ok = ok || matches(x.get<std::string>());
    } else {
      ok = matches(t.get<std::string>());
    }
    if (!ok) return fail("type mismatch, expected " + t.dump() + " got " + doc.dump());
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& x : schema.at("enum")) ok = ok || x == doc;
    if (!ok) return fail("value " + doc.dump() + " not in enum");
  }

  if (doc.is_number() && schema.contains("minimum") &&
      doc.get<double>() < schema.at("minimum").get<double>())
    return fail("value below minimum: " + doc.dump());
  if (doc.is_number() && schema.contains("maximum") &&
      doc.get<double>() > schema.at("maximum").get<double>())
    return fail("value above maximum: " + doc.dump());

  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& k : schema.at("required"))
        if (!doc.contains(k.get<std::string>()))
          return fail("missing required key '" + k.get<std::string>() + "'");
    }
    const json props = schema.contains("properties") ? schema.at("properties") : json::object();
    const bool extra_ok = !schema.contains("additionalProperties") ||
                          schema.at("additionalProperties") != json(false);
    for (const auto& item : doc.items()) {
      if (props.contains(item.key())) {
        if (!validate_schema(item.value(), props.at(item.key()), error)) {
          if (error) *error = "at '" + item.key() + "': " + *error;
          return false;
        }
      } else if (!extra_ok) {
        return fail("unexpected key '" + item.key() + "'");
      }
    }
  }

  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema.at("minItems").get<std::size_t>())
      return fail("array too short");
    if (schema.contains("maxItems") && doc.size() > schema.at("maxItems").get<std::size_t>())
      return fail("array too long");
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!validate_schema(doc[i], schema.at("items"), error)) {
          if (error) *error = "at index " + std::to_string(i) + ": " + *error;
          return false;
        }
      }
    }
  }
  return true;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qkdcd
