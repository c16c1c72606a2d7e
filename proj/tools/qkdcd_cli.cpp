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

// Batch front end over the qkdcd C API. Subcommands:
//   construct     build an operator catalog for an encoding
//   discriminate  analyze a whole set or one unitary pair
//   simulate      run protocol sessions from a JSON config
//   report        re-emit or flatten an existing simulation report
// Exit codes: 0 success, 2 usage/config error, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkdcd/qkdcd_c.h"

#ifndef QKDCD_SCHEMA_DIR
#define QKDCD_SCHEMA_DIR "schemas"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unique ownership of strings handed out by the C API.
struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { qkdcd_string_free(ptr); }
  char** out() { return &ptr; }
  std::string str() const { return ptr != nullptr ? ptr : ""; }
};

std::string last_error() {
  const char* msg = qkdcd_last_error();
  return (msg != nullptr && *msg != '\0') ? msg : "unknown error";
}

// Argument and content problems exit 2; broken invariants exit 3.
void check(qkdcd_status st, const std::string& context) {
  if (st == QKDCD_OK) return;
  const std::string msg = context + ": " + last_error();
  if (st == QKDCD_ERR_VERIFY || st == QKDCD_ERR_INTERNAL || st == QKDCD_ERR_NOMEM)
    throw VerifyError(msg);
  throw UsageError(msg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string schema_dir() {
  const char* env = std::getenv("QKDCD_SCHEMA_DIR");
  return (env != nullptr && *env != '\0') ? env : QKDCD_SCHEMA_DIR;
}

std::string load_schema(const std::string& name) {
  const std::string path = schema_dir() + "/" + name + ".schema.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VerifyError("cannot read schema '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Emitted documents must match their shipped schema; a mismatch means the
// library and the schema drifted apart, which is a verification failure.
void self_check(const std::string& doc, const std::string& schema_name) {
  const qkdcd_status st = qkdcd_validate_json(doc.c_str(), load_schema(schema_name).c_str());
  if (st != QKDCD_OK)
    throw VerifyError("emitted document violates schema '" + schema_name + "': " + last_error());
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

struct SetHandle {
  qkdcd_operator_set* set = nullptr;
  ~SetHandle() { qkdcd_operator_set_free(set); }
};

void open_set(const std::string& encoding, const std::string& recipe, SetHandle& h) {
  check(qkdcd_operator_set_new(encoding.c_str(), recipe.empty() ? nullptr : recipe.c_str(),
                               &h.set),
        "construct " + encoding);
}

// Small built-in 2x2 unitaries for `discriminate --pair`; anything else is
// loaded from a @file containing a row-major [re, im] matrix.
std::string resolve_matrix(const std::string& name) {
  if (name == "I") return "[[[1,0],[0,0]],[[0,0],[1,0]]]";
  if (name == "sx") return "[[[0,0],[1,0]],[[1,0],[0,0]]]";
  if (name == "sy") return "[[[0,0],[0,-1]],[[0,1],[0,0]]]";
  if (name == "sz") return "[[[1,0],[0,0]],[[0,0],[-1,0]]]";
  if (!name.empty() && name.front() == '@') return read_file(name.substr(1));
  throw UsageError("unknown matrix '" + name + "' (use I, sx, sy, sz or @file.json)");
}

int run_construct(const std::string& encoding, const std::string& recipe,
                  const std::string& out_path) {
  SetHandle h;
  open_set(encoding, recipe, h);
  ApiString catalog;
  check(qkdcd_catalog_json(h.set, catalog.out()), "catalog");
  self_check(catalog.str(), "operator_catalog");
  write_output(catalog.str(), out_path);
  int all_pass = 0;
  check(qkdcd_operator_set_verify(h.set, &all_pass), "verify");
  if (all_pass == 0) throw VerifyError("operator actions failed verification");
  return kExitOk;
}

int run_discriminate(const std::string& encoding, const std::string& recipe,
                     const std::vector<std::string>& pair, double p1, double p2,
                     const std::string& out_path) {
  if (!pair.empty() && !encoding.empty())
    throw UsageError("give either an encoding or --pair, not both");
  if (pair.empty() && encoding.empty())
    throw UsageError("give an encoding or --pair A B");

  ApiString doc;
  if (!pair.empty()) {
    const std::string ma = resolve_matrix(pair[0]);
    const std::string mb = resolve_matrix(pair[1]);
    check(qkdcd_pair_json(pair[0].c_str(), pair[1].c_str(), ma.c_str(), mb.c_str(), p1, p2,
                          doc.out()),
          "pair discrimination");
    self_check(doc.str(), "pair_discrimination");
  } else {
    SetHandle h;
    open_set(encoding, recipe, h);
    check(qkdcd_discrimination_json(h.set, p1, p2, doc.out()), "discrimination");
    self_check(doc.str(), "discrimination_report");
  }
  write_output(doc.str(), out_path);
  return kExitOk;
}

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<int> trials, bool reproducible, const std::string& format,
                 const std::string& out_path) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + config_path + "' is not valid JSON: " + e.what());
  }
  if (seed) cfg["seed"] = *seed;
  if (trials) cfg["sessions"] = *trials;

  const std::string cfg_text = cfg.dump();
  const qkdcd_status st =
      qkdcd_validate_json(cfg_text.c_str(), load_schema("run_config").c_str());
  if (st != QKDCD_OK) throw UsageError("config rejected: " + last_error());

  ApiString report;
  check(qkdcd_simulate_json(cfg_text.c_str(), reproducible ? 1 : 0, report.out()), "simulate");
  self_check(report.str(), "simulation_report");

  if (format == "csv") {
    ApiString csv;
    check(qkdcd_csv_from_report(report.ptr, csv.out()), "csv");
    write_output(csv.str(), out_path);
  } else {
    write_output(report.str(), out_path);
  }
  return kExitOk;
}

int run_report(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
  const std::string text = read_file(in_path);
  const qkdcd_status st =
      qkdcd_validate_json(text.c_str(), load_schema("simulation_report").c_str());
  if (st != QKDCD_OK)
    throw UsageError("'" + in_path + "' is not a valid simulation report: " + last_error());

  if (format == "csv") {
    ApiString csv;
    check(qkdcd_csv_from_report(text.c_str(), csv.out()), "csv");
    write_output(csv.str(), out_path);
  } else {
    // Canonical re-emission: two-space indent, sorted keys, trailing newline.
    write_output(nlohmann::json::parse(text).dump(2) + "\n", out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-party key distribution over collective-noise channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qkdcd_version()));

  std::string encoding, recipe, out_path;
  auto* construct = app.add_subcommand("construct", "build an operator catalog");
  construct->add_option("encoding", encoding,
                        "single_photon | dephasing | rotation | general4")
      ->required();
  construct->add_option("--recipe", recipe, "identity_on_complement | cyclic_shift");
  construct->add_option("--out", out_path, "output path (default stdout)");

  std::string d_encoding, d_recipe, d_out;
  std::vector<std::string> pair;
  double p1 = 0.5, p2 = 0.5;
  auto* discriminate = app.add_subcommand("discriminate", "distinguishability analysis");
  discriminate->add_option("encoding", d_encoding, "analyze a whole operator set");
  discriminate->add_option("--recipe", d_recipe, "identity_on_complement | cyclic_shift");
  discriminate->add_option("--pair", pair, "two unitaries: I, sx, sy, sz or @file.json")
      ->expected(2);
  discriminate->add_option("--p1", p1, "prior of the first unitary");
  discriminate->add_option("--p2", p2, "prior of the second unitary");
  discriminate->add_option("--out", d_out, "output path (default stdout)");

  std::string config_path, s_format = "json", s_out;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool reproducible = false;
  auto* simulate = app.add_subcommand("simulate", "run protocol sessions from a config");
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("--seed", seed, "override the master seed");
  simulate->add_option("--trials", trials, "override the session count");
  simulate->add_option("--format", s_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_flag("--reproducible", reproducible, "omit timestamps for byte-identical output");
  simulate->add_option("--out", s_out, "output path (default stdout)");

  std::string in_path, r_format = "json", r_out;
  auto* report = app.add_subcommand("report", "validate and re-emit a simulation report");
  report->add_option("--in", in_path, "existing simulation report")->required();
  report->add_option("--format", r_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", r_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (construct->parsed()) return run_construct(encoding, recipe, out_path);
    if (discriminate->parsed()) return run_discriminate(d_encoding, d_recipe, pair, p1, p2, d_out);
    if (simulate->parsed())
      return run_simulate(config_path, seed, trials, reproducible, s_format, s_out);
    if (report->parsed()) return run_report(in_path, r_format, r_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerifyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
