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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkdcd/channels.hpp"
#include "qkdcd/operator_sets.hpp"

namespace qkdcd {

// Three-party key agreement with a single collective eavesdropping check.
// honest_center: the center prepares and measures; Alice and Bob encode in
// transit and the key is the XOR of their choices. dishonest_center: Bob
// shields the key from the measuring center with a secret shuffle.
enum class Variant { honest_center, dishonest_center };

Variant variant_from_string(std::string_view s);
std::string to_string(Variant v);

enum class AttackKind { none, intercept_resend, dense_coding_probe, malicious_center };

AttackKind attack_from_string(std::string_view s);
std::string to_string(AttackKind k);

struct AttackModel {
  AttackKind kind = AttackKind::none;
};

struct ProtocolConfig {
  Variant variant = Variant::honest_center;
  EncodingName encoding = EncodingName::dephasing;
  int n = 256;            // block length
  int m = 64;             // check positions, 0 < m < n
  double threshold = 0.0; // abort when check error rate exceeds this
  NoiseModel noise;
  AttackModel attack;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> noise_seed;  // overrides the derived noise stream

  void validate() const;  // throws ConfigError
};

// Correction the center applies before measuring, selected by how many C
// layers (0, 1 or 2) the announced conjugation bits add up to.
enum class CorrectionOp { identity, c_inverse, u_flip };

CorrectionOp center_correction(int total_c_count);  // throws BadCountError

// One disclosed check position with its comparison outcome.
struct CheckRecord {
  int position = 0;
  int alice_bit = 0;
  int bob_bit = -1;   // -1 when the variant has no Bob encoding bits
  int decoded = 0;    // the checking party's value; kInconclusive possible
  bool error = false;
};

// Per-position record of an eavesdropper's inference.
struct EveRecord {
  int position = 0;
  int true_a = 0;
  int guessed_a = 0;
  OpLabel true_op = OpLabel::I;
  OpLabel guessed_op = OpLabel::I;
};

struct ProtocolTranscript {
  std::vector<std::uint8_t> A, Aprime;   // Alice's encode / conjugate bits
  std::vector<std::uint8_t> B, Bprime;   // Bob's, empty in dishonest_center
  std::vector<int> permutation;          // Bob's shuffle, dishonest_center only
  std::vector<int> check_positions;      // sorted
  std::vector<CheckRecord> announced_ops;
  std::vector<int> center_outcomes;      // announced decode, slot order
  std::vector<std::string> messages;     // classical/quantum message log
  std::vector<EveRecord> eve_records;
};

struct SessionResult {
  bool aborted = false;
  double check_error_rate = 0.0;
  std::vector<std::uint8_t> raw_key;  // kept positions, index order
  double qber = 0.0;                  // ground-truth error rate on kept key
  double key_rate = 0.0;              // (n - m) / n
  bool keys_match = false;
  ProtocolTranscript transcript;
};

struct EavesdropCheckResult {
  double error_rate = 0.0;
  bool abort = false;
};

EavesdropCheckResult eavesdrop_check(const std::vector<CheckRecord>& records,
                                     double threshold);

SessionResult run_honest_center(const ProtocolConfig& cfg);
SessionResult run_dishonest_center(const ProtocolConfig& cfg);
SessionResult run_session(const ProtocolConfig& cfg);  // dispatch on variant

// Session seeds inside a batch are derived as Rng::derive(seed, index).
std::vector<SessionResult> run_batch(const ProtocolConfig& cfg, int sessions);

struct BatchSummary {
  int sessions = 0;
  double abort_fraction = 0.0;
  double mean_qber = 0.0;
  double mean_check_error_rate = 0.0;
  double key_rate = 0.0;
  double keys_match_fraction = 0.0;
};

BatchSummary summarize(const std::vector<SessionResult>& results);

}  // namespace qkdcd
