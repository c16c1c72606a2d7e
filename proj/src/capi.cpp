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

#include "qkdcd/qkdcd_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qkdcd/attacks.hpp"
#include "qkdcd/json_io.hpp"
#include "qkdcd/version.hpp"

struct qkdcd_operator_set {
  qkdcd::OperatorSet set;
};

namespace {

std::string& tl_error() {
  thread_local std::string err;
  return err;
}

qkdcd_status set_error(qkdcd_status s, const char* what) {
  tl_error() = what != nullptr ? what : "";
  return s;
}

// Maps the library exception hierarchy onto the C status codes: bad names
// and malformed JSON are invalid arguments, structurally valid but
// unusable inputs are config errors, and failed internal invariants are
// verification errors.
template <typename F>
qkdcd_status guarded(F&& f) {
  try {
    tl_error().clear();
    return f();
  } catch (const qkdcd::UnknownEncodingError& e) {
    return set_error(QKDCD_ERR_INVALID_ARG, e.what());
  } catch (const qkdcd::ConfigError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::BadPriorsError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::BadCountError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::TooLargeError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::OddQubitCountError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::RecipeInfeasibleError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::DependentSeedError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::DimensionMismatchError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::NonUnitaryError& e) {
    return set_error(QKDCD_ERR_CONFIG, e.what());
  } catch (const qkdcd::NonUnitaryResultError& e) {
    return set_error(QKDCD_ERR_VERIFY, e.what());
  } catch (const qkdcd::NoConvergenceError& e) {
    return set_error(QKDCD_ERR_VERIFY, e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(QKDCD_ERR_INVALID_ARG, e.what());
  } catch (const std::bad_alloc& e) {
    return set_error(QKDCD_ERR_NOMEM, e.what());
  } catch (const std::exception& e) {
    return set_error(QKDCD_ERR_INTERNAL, e.what());
  }
}

qkdcd_status copy_out(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (buf == nullptr) return set_error(QKDCD_ERR_NOMEM, "allocation failed");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return QKDCD_OK;
}

qkdcd_status require(bool ok, const char* what) {
  return ok ? QKDCD_OK : set_error(QKDCD_ERR_INVALID_ARG, what);
}

}  // namespace

extern "C" {

const char* qkdcd_version(void) { return qkdcd::kVersion; }

const char* qkdcd_last_error(void) { return tl_error().c_str(); }

void qkdcd_string_free(char* s) { std::free(s); }

qkdcd_status qkdcd_operator_set_new(const char* encoding, const char* recipe,
                                    qkdcd_operator_set** out) {
  if (require(encoding && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::EncodingName name = qkdcd::encoding_from_string(encoding);
    qkdcd::OperatorSet set =
        recipe == nullptr ? qkdcd::canonical_operator_set(name)
                          : qkdcd::build_operator_set(qkdcd::make_encoding(name),
                                                      qkdcd::recipe_from_string(recipe));
    *out = new qkdcd_operator_set{std::move(set)};
    return QKDCD_OK;
  });
}

void qkdcd_operator_set_free(qkdcd_operator_set* set) { delete set; }

qkdcd_status qkdcd_operator_set_dim(const qkdcd_operator_set* set, size_t* out) {
  if (require(set && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  *out = set->set.encoding.dim;
  return QKDCD_OK;
}

qkdcd_status qkdcd_operator_set_verify(const qkdcd_operator_set* set, int* all_pass) {
  if (require(set && all_pass, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    *all_pass = qkdcd::verify_flip_actions(set->set).all_pass ? 1 : 0;
    return QKDCD_OK;
  });
}

qkdcd_status qkdcd_catalog_json(const qkdcd_operator_set* set, char** out) {
  if (require(set && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::FlipActionReport rep = qkdcd::verify_flip_actions(set->set);
    return copy_out(qkdcd::dump_report(qkdcd::catalog_json(set->set, rep)), out);
  });
}

qkdcd_status qkdcd_discrimination_json(const qkdcd_operator_set* set, double p1,
                                       double p2, char** out) {
  if (require(set && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::DiscriminationReport rep = qkdcd::analyze_operator_set(set->set, p1, p2);
    return copy_out(qkdcd::dump_report(qkdcd::discrimination_json(set->set, rep)), out);
  });
}

qkdcd_status qkdcd_pair_json(const char* name_a, const char* name_b,
                             const char* matrix_a_json, const char* matrix_b_json,
                             double p1, double p2, char** out) {
  if (require(name_a && name_b && matrix_a_json && matrix_b_json && out, "null argument") !=
      QKDCD_OK)
    return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::CMatrix a = qkdcd::matrix_from_json(qkdcd::json::parse(matrix_a_json));
    const qkdcd::CMatrix b = qkdcd::matrix_from_json(qkdcd::json::parse(matrix_b_json));
    return copy_out(qkdcd::dump_report(qkdcd::pair_json(name_a, name_b, a, b, p1, p2)), out);
  });
}

qkdcd_status qkdcd_min_error(const char* matrix_a_json, const char* matrix_b_json,
                             double p1, double p2, double* out) {
  if (require(matrix_a_json && matrix_b_json && out, "null argument") != QKDCD_OK)
    return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::CMatrix a = qkdcd::matrix_from_json(qkdcd::json::parse(matrix_a_json));
    const qkdcd::CMatrix b = qkdcd::matrix_from_json(qkdcd::json::parse(matrix_b_json));
    *out = qkdcd::min_error_probability(a, b, p1, p2);
    return QKDCD_OK;
  });
}

qkdcd_status qkdcd_simulate_json(const char* config_json, int reproducible, char** out) {
  if (require(config_json && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::RunConfig cfg = qkdcd::parse_run_config(qkdcd::json::parse(config_json));
    const std::vector<qkdcd::SessionResult> results =
        qkdcd::run_batch(cfg.protocol, cfg.sessions);
    qkdcd::json report;
    if (cfg.protocol.attack.kind != qkdcd::AttackKind::none) {
      const qkdcd::AttackReport rep = qkdcd::attack_report_from(cfg.protocol, results);
      report = qkdcd::simulation_json(cfg, results, &rep, reproducible != 0);
    } else {
      report = qkdcd::simulation_json(cfg, results, nullptr, reproducible != 0);
    }
    return copy_out(qkdcd::dump_report(report), out);
  });
}

qkdcd_status qkdcd_csv_from_report(const char* report_json, char** out) {
  if (require(report_json && out, "null argument") != QKDCD_OK) return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::json rep = qkdcd::json::parse(report_json);
    if (!rep.is_object() || rep.value("type", "") != "simulation_report")
      throw qkdcd::ConfigError("not a simulation_report document");
    return copy_out(qkdcd::aggregate_csv(rep), out);
  });
}

qkdcd_status qkdcd_detection_oracle(const char* attack, const char* encoding,
                                    const char* variant, int n, double* out) {
  if (require(attack && encoding && variant && out, "null argument") != QKDCD_OK)
    return QKDCD_ERR_INVALID_ARG;
  return guarded([&] {
    const qkdcd::OperatorSet set =
        qkdcd::canonical_operator_set(qkdcd::encoding_from_string(encoding));
    *out = qkdcd::detection_oracle(qkdcd::attack_from_string(attack), set,
                                   qkdcd::variant_from_string(variant), n);
    return QKDCD_OK;
  });
}

qkdcd_status qkdcd_validate_json(const char* doc_json, const char* schema_json) {
  if (require(doc_json && schema_json, "null argument") != QKDCD_OK)
    return QKDCD_ERR_INVALID_ARG;
  return guarded([&]() -> qkdcd_status {
    const qkdcd::json doc = qkdcd::json::parse(doc_json);
    const qkdcd::json schema = qkdcd::json::parse(schema_json);
    std::string why;
    if (!qkdcd::validate_schema(doc, schema, &why))
      return set_error(QKDCD_ERR_VALIDATE, why.c_str());
    return QKDCD_OK;
  });
}

}  // extern "C"
