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

#pragma once

#include <array>
#include <cstdint>

#include "qkdcd/protocol.hpp"

namespace qkdcd {

struct BinomialEstimate {
  double p = 0.0;
  long trials = 0;
  double sigma = 0.0;  // binomial sigma at the oracle rate
  double lo3 = 0.0;    // p - 3 sigma
  double hi3 = 0.0;    // p + 3 sigma
};

// Aggregated attack statistics over a batch of sessions.
struct AttackReport {
  AttackKind kind = AttackKind::none;
  Variant variant = Variant::honest_center;
  EncodingName encoding = EncodingName::dephasing;
  int sessions = 0;
  long check_events = 0;
  BinomialEstimate per_check_detection;
  bool oracle_available = false;  // enumeration feasible for this config
  double oracle_detection = 0.0;
  double eve_information = 0.0;  // bits per state about Alice's encode bit
  double guess_accuracy = 0.0;   // fraction of exactly identified operations
  double induced_qber = 0.0;
  double abort_fraction = 0.0;
};

// Exact per-check detection probability by enumerating every discrete
// branch of the attack (measurement bases, outcomes, encode bits; for the
// malicious center in the dishonest variant, Bob's permutations --
// feasible for n <= 10). `reversed` permutes the enumeration order; the
// result must not depend on it.
double detection_oracle(AttackKind kind, const OperatorSet& set, Variant variant, int n,
                        bool reversed = false);

// Pools per-check detection events, Eve's per-position guesses and the
// induced key error from already-run sessions.
AttackReport attack_report_from(const ProtocolConfig& cfg,
                                const std::vector<SessionResult>& results);

// Runs `sessions` protocol sessions under cfg.attack and pools their stats.
AttackReport run_attack_batch(const ProtocolConfig& cfg, int sessions);

// Plug-in mutual information (bits) with the Miller-Madow bias correction,
// over joint counts of (true bit, guessed bit).
double mutual_information_mm(const std::array<std::array<long, 2>, 2>& counts);

// Single-shot U-versus-C guessing game (fair priors). Every physically
// realizable strategy keeps the empirical error at or above the pairwise
// minimum-error bound; the entangled Helstrom strategy attains it.
enum class ProbeStrategy { logical_z_probe, entangled_helstrom, random_basis_probe };

struct GameResult {
  ProbeStrategy strategy = ProbeStrategy::logical_z_probe;
  long trials = 0;
  long errors = 0;
  double error_rate = 0.0;
  double sigma = 0.0;   // binomial sigma at the bound
  double bound = 0.0;   // minimum error probability for the pair (U, C)
};

GameResult run_discrimination_game(const OperatorSet& set, ProbeStrategy strategy,
                                   long trials, std::uint64_t seed);

}  // namespace qkdcd
