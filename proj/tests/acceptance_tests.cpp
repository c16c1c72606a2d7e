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

// Release gate. Each criterion prints exactly one [PASS]/[FAIL] line with
// its pinned tolerance; the process exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qkdcd/attacks.hpp"
#include "qkdcd/channels.hpp"
#include "qkdcd/discrimination.hpp"
#include "qkdcd/encodings.hpp"
#include "qkdcd/operator_sets.hpp"
#include "qkdcd/protocol.hpp"
#include "qkdcd/qkdcd_c.h"

namespace {

using namespace qkdcd;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<EncodingName> kAllEncodings = {
    EncodingName::single_photon, EncodingName::dephasing, EncodingName::rotation,
    EncodingName::general4};

// The published closed forms, restated here so the check does not lean on
// the library's own reference tables. a and b are the half-sum and
// half-difference of 1 and i.
const cplx kA(0.5, 0.5), kB(0.5, -0.5);

CMatrix printed_u(EncodingName name) {
  switch (name) {
    case EncodingName::single_photon:
      return CMatrix::from_rows({{0, 1}, {1, 0}});
    case EncodingName::dephasing:
      return CMatrix::from_rows(
          {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    case EncodingName::rotation:
      return CMatrix::from_rows(
          {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}});
    default:
      std::abort();
  }
}

CMatrix printed_c(EncodingName name) {
  switch (name) {
    case EncodingName::single_photon:
      return CMatrix::from_rows({{kA, kB}, {kB, kA}});
    case EncodingName::dephasing:
      return CMatrix::from_rows({{kA, 0, 0, kB},
                                 {0, kA, kB, 0},
                                 {0, kB, kA, 0},
                                 {kB, 0, 0, kA}});
    case EncodingName::rotation:
      return CMatrix::from_rows({{kA, kB, 0, 0},
                                 {kB, kA, 0, 0},
                                 {0, 0, kA, -kB},
                                 {0, 0, -kB, kA}});
    default:
      std::abort();
  }
}

void criterion_operator_fidelity() {
  const auto t0 = Clock::now();
  double worst_ref = 0.0, worst_sq = 0.0;
  for (const EncodingName name : kAllEncodings) {
    const OperatorSet set = canonical_operator_set(name);
    if (name != EncodingName::general4) {
      worst_ref = std::max(worst_ref, set.U.max_abs_diff(printed_u(name)));
      worst_ref = std::max(worst_ref, set.C.max_abs_diff(printed_c(name)));
    }
    worst_sq = std::max(worst_sq, (set.C * set.C).max_abs_diff(set.U));
  }
  const double dt = seconds_since(t0);
  const bool pass = worst_ref <= 1e-10 && worst_sq <= 1e-9 && dt < 1.0;
  report(1, pass, "constructed operators match their closed forms and C^2 = U",
         "max closed-form dev " + fmt(worst_ref) + " <= 1e-10, max C^2-U dev " +
             fmt(worst_sq) + " <= 1e-9, " + fmt(dt) + " s < 1 s");
}

void criterion_flip_actions() {
  const cplx fwd(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));   // z -> x
  const cplx back(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)); // x -> z
  double worst = 0.0;
  bool all_pass = true;
  int actions = 0;
  for (const EncodingName name : kAllEncodings) {
    const FlipActionReport rep = verify_flip_actions(canonical_operator_set(name));
    all_pass = all_pass && rep.all_pass && rep.actions.size() == 8;
    for (const FlipAction& act : rep.actions) {
      ++actions;
      const cplx expected = act.op == OpLabel::U ? cplx(1.0, 0.0)
                            : act.input[0] == 'z' ? fwd
                                                  : back;
      worst = std::max(worst, act.residual);
      worst = std::max(worst, std::abs(act.phase - expected));
    }
  }
  const bool pass = all_pass && actions == 32 && worst <= 1e-9;
  report(2, pass,
         "all 32 basis-state flip actions hold with the (1+-i)/sqrt(2) phases",
         "max residual/phase dev " + fmt(worst) + " <= 1e-9");
}

void criterion_discrimination_values() {
  const OperatorSet ref = canonical_operator_set(EncodingName::rotation);
  const double r_uc = eigenvalue_hull_distance(ref.U.adjoint() * ref.C);
  const double dev_r = std::abs(r_uc - 1.0 / std::sqrt(2.0));
  const double pe = min_error_probability(ref.U, ref.C, 0.5, 0.5);
  const double dev_pe = std::abs(pe - 0.14644660940672624);

  double worst_identity = 0.0;
  double min_r = 1.0;
  bool c_never_unambiguous = true, identities_hold = true;
  for (const EncodingName name : kAllEncodings) {
    const DiscriminationReport rep =
        analyze_operator_set(canonical_operator_set(name), 0.5, 0.5);
    worst_identity = std::max(worst_identity, std::abs(rep.r_i_c - rep.r_c));
    worst_identity = std::max(worst_identity, std::abs(rep.r_u_c - rep.r_c_dag));
    min_r = std::min({min_r, rep.r_i_c, rep.r_u_c});
    identities_hold = identities_hold && rep.identities_hold;
    c_never_unambiguous = c_never_unambiguous && !rep.unambiguous[2];
  }
  const bool pass = dev_r <= 1e-10 && dev_pe <= 1e-10 && worst_identity <= 1e-10 &&
                    min_r > 0.0 && identities_hold && c_never_unambiguous;
  report(3, pass,
         "r(U+C) = 1/sqrt(2), min error 0.146447, hull identities, C in span",
         "r dev " + fmt(dev_r) + " <= 1e-10, p_e dev " + fmt(dev_pe) +
             " <= 1e-10, identity dev " + fmt(worst_identity) + " <= 1e-10, min r " +
             fmt(min_r) + " > 0");
}

void criterion_df_dimensions() {
  const int d2 = df_dimension(2), d4 = df_dimension(4);
  report(4, d2 == 1 && d4 == 2, "noise-protected subspace dimensions",
         "d(2) = " + std::to_string(d2) + " (want 1), d(4) = " + std::to_string(d4) +
             " (want 2)");
}

void criterion_noise_immunity() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  Rng rng(2026);
  for (const EncodingName name :
       {EncodingName::dephasing, EncodingName::rotation, EncodingName::general4}) {
    const LogicalEncoding enc = make_encoding(name);
    const NoiseModel model{enc.noise_class, SamplingPolicy::per_block};
    const int draws = name == EncodingName::general4 ? 1000 : 10000;
    const CVector states[4] = {enc.z0, enc.z1, enc.x0, enc.x1};
    for (int i = 0; i < draws; ++i) {
      const NoiseParameter p = sample_noise(model, rng);
      for (const CVector& psi : states) {
        const CVector out = apply_collective_noise(psi, p, enc.physical_qubits);
        const double fidelity = std::norm(inner(psi, out));
        worst = std::max(worst, std::abs(1.0 - fidelity));
      }
    }
  }
  const double dt = seconds_since(t0);
  const bool pass = worst <= 1e-9 && dt < 30.0;
  report(5, pass,
         "logical states survive 10^4 matched collective-noise draws "
         "(10^3 Haar for the 4-qubit code)",
         "max fidelity deficit " + fmt(worst) + " <= 1e-9, " + fmt(dt) + " s < 30 s");
}

void criterion_protocol_correctness() {
  bool pass = true;
  std::string why = "all clean";
  for (const EncodingName enc : kAllEncodings) {
    for (const Variant var : {Variant::honest_center, Variant::dishonest_center}) {
      ProtocolConfig cfg;
      cfg.variant = var;
      cfg.encoding = enc;
      cfg.n = 256;
      cfg.m = 64;
      cfg.threshold = 0.0;
      cfg.seed = 313;
      const std::vector<SessionResult> quiet = run_batch(cfg, 100);

      ProtocolConfig noisy = cfg;
      noisy.noise.kind = make_encoding(enc).noise_class;
      const std::vector<SessionResult> loud = run_batch(noisy, 100);

      for (int i = 0; i < 100; ++i) {
        const bool ok = !quiet[i].aborted && quiet[i].qber == 0.0 &&
                        quiet[i].keys_match && !loud[i].aborted &&
                        loud[i].qber == 0.0 && loud[i].keys_match &&
                        quiet[i].raw_key == loud[i].raw_key;
        if (!ok && pass) {
          pass = false;
          why = "first failure: " + to_string(enc) + "/" + to_string(var) +
                " session " + std::to_string(i);
        }
      }
    }
  }
  report(6, pass,
         "100 sessions per variant x encoding at n=256, m=64: zero QBER, "
         "matching keys, and matched noise changes nothing",
         why);
}

void criterion_attack_statistics() {
  // Intercept-resend, 10^4 pooled check events.
  ProtocolConfig ir;
  ir.encoding = EncodingName::dephasing;
  ir.n = 64;
  ir.m = 16;
  ir.threshold = 0.02;
  ir.attack.kind = AttackKind::intercept_resend;
  ir.seed = 99;
  const AttackReport ir_rep = run_attack_batch(ir, 625);
  const double ir_dev = std::abs(ir_rep.per_check_detection.p - ir_rep.oracle_detection);
  const bool ir_ok = ir_rep.oracle_available && ir_rep.check_events >= 10000 &&
                     ir_dev <= 3.0 * ir_rep.per_check_detection.sigma;

  // Malicious center against the dishonest variant, 10^4 pooled events.
  ProtocolConfig mc;
  mc.variant = Variant::dishonest_center;
  mc.encoding = EncodingName::single_photon;
  mc.n = 8;
  mc.m = 2;
  mc.threshold = 0.02;
  mc.attack.kind = AttackKind::malicious_center;
  mc.seed = 100;
  const AttackReport mc_rep = run_attack_batch(mc, 5000);
  const double mc_dev = std::abs(mc_rep.per_check_detection.p - mc_rep.oracle_detection);
  const bool mc_ok = mc_rep.oracle_available && mc_rep.check_events >= 10000 &&
                     mc_dev <= 3.0 * mc_rep.per_check_detection.sigma;

  // Malicious center against the honest variant: full key, no trace.
  ProtocolConfig mh = mc;
  mh.variant = Variant::honest_center;
  mh.n = 64;
  mh.m = 16;
  const AttackReport mh_rep = run_attack_batch(mh, 50);
  const bool mh_ok = mh_rep.guess_accuracy == 1.0 && mh_rep.induced_qber == 0.0 &&
                     mh_rep.per_check_detection.p == 0.0 && mh_rep.abort_fraction == 0.0;

  report(7, ir_ok && mc_ok && mh_ok,
         "detection rates match enumeration; honest-variant center reads the key",
         "intercept dev " + fmt(ir_dev) + " <= 3 sigma " +
             fmt(3.0 * ir_rep.per_check_detection.sigma) + ", malicious dev " +
             fmt(mc_dev) + " <= 3 sigma " + fmt(3.0 * mc_rep.per_check_detection.sigma) +
             ", honest-variant accuracy " + fmt(mh_rep.guess_accuracy) +
             " with detection " + fmt(mh_rep.per_check_detection.p));
}

void criterion_error_floor() {
  const OperatorSet set = canonical_operator_set(EncodingName::rotation);
  bool pass = true;
  double worst_margin = 1.0;
  for (const ProbeStrategy st :
       {ProbeStrategy::logical_z_probe, ProbeStrategy::entangled_helstrom,
        ProbeStrategy::random_basis_probe}) {
    const GameResult g = run_discrimination_game(set, st, 20000, 424242);
    const double margin = g.error_rate - (0.1464 - 3.0 * g.sigma);
    worst_margin = std::min(worst_margin, margin);
    pass = pass && margin >= 0.0 && std::abs(g.bound - 0.14644660940672624) <= 1e-12;
  }
  report(8, pass,
         "every probe strategy's U-vs-C error stays at or above the floor 0.1464",
         "20000 trials each, worst margin above floor-3sigma " + fmt(worst_margin));
}

void criterion_determinism() {
  const std::string cfg_text =
      "{\"variant\":\"dishonest_center\",\"encoding\":\"rotation\",\"n\":48,"
      "\"m\":12,\"noise\":{\"kind\":\"rotation\"},\"attack\":{\"kind\":"
      "\"intercept_resend\"},\"seed\":17,\"sessions\":5,\"verbosity\":2}";

  char* a = nullptr;
  char* b = nullptr;
  bool api_ok = qkdcd_simulate_json(cfg_text.c_str(), 1, &a) == QKDCD_OK &&
                qkdcd_simulate_json(cfg_text.c_str(), 1, &b) == QKDCD_OK &&
                a != nullptr && b != nullptr && std::string(a) == std::string(b);
  qkdcd_string_free(a);
  qkdcd_string_free(b);

  // When the binary is reachable, repeat the check end to end.
  bool cli_ok = true;
  std::string how = "library API";
  const char* cli = std::getenv("QKDCD_CLI");
  if (cli != nullptr && *cli != '\0') {
    namespace fs = std::filesystem;
    const fs::path cfg_path = fs::temp_directory_path() / "qkdcd_acceptance_cfg.json";
    std::ofstream(cfg_path) << cfg_text;
    const std::string cmd = std::string(cli) + " simulate --config " +
                            cfg_path.string() + " --reproducible 2>&1";
    std::string outs[2];
    for (std::string& out : outs) {
      FILE* pipe = popen(cmd.c_str(), "r");
      cli_ok = cli_ok && pipe != nullptr;
      if (pipe == nullptr) break;
      char buf[4096];
      size_t n;
      while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
      const int status = pclose(pipe);
      cli_ok = cli_ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    }
    cli_ok = cli_ok && !outs[0].empty() && outs[0] == outs[1];
    fs::remove(cfg_path);
    how = "library API and command line";
  }
  report(9, api_ok && cli_ok, "repeated reproducible runs are byte-identical",
         how + ", full-transcript report");
}

}  // namespace

int main() {
  criterion_operator_fidelity();
  criterion_flip_actions();
  criterion_discrimination_values();
  criterion_df_dimensions();
  criterion_noise_immunity();
  criterion_protocol_correctness();
  criterion_attack_statistics();
  criterion_error_floor();
  criterion_determinism();
  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
