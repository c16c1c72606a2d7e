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

#include "qkdcd/protocol.hpp"

#include <algorithm>
#include <numeric>

#include "eve_internal.hpp"

namespace qkdcd {

namespace {

// Substream tags for the independent role generators of one session.
constexpr std::uint64_t kStreamCenter = 1;
constexpr std::uint64_t kStreamAlice = 2;
constexpr std::uint64_t kStreamBob = 3;
constexpr std::uint64_t kStreamNoise = 4;
constexpr std::uint64_t kStreamEve = 5;

std::vector<std::uint8_t> random_bits(int n, Rng& rng) {
  std::vector<std::uint8_t> bits(n);
  for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(rng.below(2));
  return bits;
}

// Check positions drawn without replacement (partial Fisher-Yates), then
// sorted for reporting.
std::vector<int> sample_positions(int n, int m, Rng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 0; k < m; ++k) {
    const int j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(idx[k], idx[j]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

OpLabel op_from_bits(int a, int aprime) {
  if (aprime == 0) return a ? OpLabel::U : OpLabel::I;
  return a ? OpLabel::UC : OpLabel::C;
}

struct EncodeOps {
  // combined[a][aprime] = C^aprime * U^a (U applied first).
  CMatrix combined[2][2];
  CMatrix c_dagger;
};

EncodeOps make_encode_ops(const OperatorSet& set) {
  EncodeOps ops;
  ops.combined[0][0] = set.I;
  ops.combined[0][1] = set.C;
  ops.combined[1][0] = set.U;
  ops.combined[1][1] = set.C * set.U;
  ops.c_dagger = set.C.adjoint();
  return ops;
}

void finalize_result(const ProtocolConfig& cfg, const std::vector<int>& decoded,
                     const std::vector<std::uint8_t>& expected, SessionResult* res) {
  const int n = cfg.n;
  std::vector<bool> is_check(n, false);
  for (int p : res->transcript.check_positions) is_check[p] = true;

  int kept = 0;
  int errors = 0;
  res->keys_match = true;
  for (int i = 0; i < n; ++i) {
    if (is_check[i]) continue;
    ++kept;
    const int d = decoded[i];
    res->raw_key.push_back(static_cast<std::uint8_t>(d == 1 ? 1 : 0));
    if (d != expected[i]) {
      ++errors;
      res->keys_match = false;
    }
  }
  res->qber = kept > 0 ? static_cast<double>(errors) / kept : 0.0;
  res->key_rate = static_cast<double>(n - cfg.m) / n;
}

}  // namespace

Variant variant_from_string(std::string_view s) {
  if (s == "honest_center") return Variant::honest_center;
  if (s == "dishonest_center") return Variant::dishonest_center;
  throw ConfigError("unknown variant: " + std::string(s));
}

std::string to_string(Variant v) {
  return v == Variant::honest_center ? "honest_center" : "dishonest_center";
}

AttackKind attack_from_string(std::string_view s) {
  if (s == "none") return AttackKind::none;
  if (s == "intercept_resend") return AttackKind::intercept_resend;
  if (s == "dense_coding_probe") return AttackKind::dense_coding_probe;
  if (s == "malicious_center") return AttackKind::malicious_center;
  throw ConfigError("unknown attack kind: " + std::string(s));
}

std::string to_string(AttackKind k) {
  switch (k) {
    case AttackKind::none:
      return "none";
    case AttackKind::intercept_resend:
      return "intercept_resend";
    case AttackKind::dense_coding_probe:
      return "dense_coding_probe";
    case AttackKind::malicious_center:
      return "malicious_center";
  }
  throw ConfigError("unknown attack kind");
}

void ProtocolConfig::validate() const {
  if (n <= 0 || n > (1 << 20)) throw ConfigError("n must be in [1, 2^20]");
  if (m <= 0 || m >= n) throw ConfigError("m must satisfy 0 < m < n");
  if (!(threshold >= 0.0) || threshold >= 1.0) throw ConfigError("threshold must be in [0, 1)");
  if (attack.kind == AttackKind::dense_coding_probe && variant == Variant::dishonest_center)
    throw ConfigError("dense_coding_probe targets the honest-center variant only");
}

CorrectionOp center_correction(int total_c_count) {
  switch (total_c_count) {
    case 0:
      return CorrectionOp::identity;
    case 1:
      return CorrectionOp::c_inverse;
    case 2:
      return CorrectionOp::u_flip;
    default:
      throw BadCountError("conjugation count must be 0, 1 or 2");
  }
}

EavesdropCheckResult eavesdrop_check(const std::vector<CheckRecord>& records,
                                     double threshold) {
  EavesdropCheckResult res;
  if (records.empty()) return res;
  int errors = 0;
  for (const CheckRecord& r : records)
    if (r.error) ++errors;
  res.error_rate = static_cast<double>(errors) / records.size();
  res.abort = res.error_rate > threshold;
  return res;
}

SessionResult run_honest_center(const ProtocolConfig& cfg) {
  cfg.validate();
  if (cfg.variant != Variant::honest_center)
    throw ConfigError("config variant does not match honest-center runner");

  const OperatorSet set = canonical_operator_set(cfg.encoding);
  const LogicalEncoding& enc = set.encoding;
  const EncodeOps ops = make_encode_ops(set);
  const int n = cfg.n;
  const int m = cfg.m;

  Rng rng_center(Rng::derive(cfg.seed, kStreamCenter));
  Rng rng_alice(Rng::derive(cfg.seed, kStreamAlice));
  Rng rng_bob(Rng::derive(cfg.seed, kStreamBob));
  Rng rng_noise(cfg.noise_seed ? Rng::derive(*cfg.noise_seed, kStreamNoise)
                               : Rng::derive(cfg.seed, kStreamNoise));
  Rng rng_eve(Rng::derive(cfg.seed, kStreamEve));

  SessionResult res;
  ProtocolTranscript& tr = res.transcript;
  tr.A = random_bits(n, rng_alice);
  tr.Aprime = random_bits(n, rng_alice);
  tr.B = random_bits(n, rng_bob);
  tr.Bprime = random_bits(n, rng_bob);

  const bool dense = cfg.attack.kind == AttackKind::dense_coding_probe;
  const bool malicious = cfg.attack.kind == AttackKind::malicious_center;
  const bool intercept = cfg.attack.kind == AttackKind::intercept_resend;

  // (a) center prepares n copies of |0>_L and sends them to Alice.
  std::vector<CVector> states(n, enc.z0);
  tr.messages.push_back("q center->alice: " + std::to_string(n) + " blocks");
  states = transmit_leg(std::move(states), cfg.noise, enc.physical_qubits, rng_noise);

  // (b) Alice encodes with U^A then C^A'.
  internal::DenseCodingPlan plan;
  std::vector<CVector> eve_stash;
  if (dense) {
    // Eve swaps in probe halves before Alice and reads them out after her.
    plan = internal::make_dense_coding_plan(set);
    eve_stash = states;
    tr.messages.push_back("q eve: probe substitution on center->alice leg");
    for (int i = 0; i < n; ++i) {
      const CMatrix& alice = ops.combined[tr.A[i]][tr.Aprime[i]];
      const CVector joint = apply_left_factor(alice, plan.probe, 2);
      const int outcome = internal::dense_coding_measure(plan, joint, rng_eve);
      const OpLabel guessed = outcome < 4 ? plan.guess[outcome] : OpLabel::I;
      const int ga = (guessed == OpLabel::U || guessed == OpLabel::UC) ? 1 : 0;
      tr.eve_records.push_back(
          {i, tr.A[i], ga, op_from_bits(tr.A[i], tr.Aprime[i]), guessed});
    }
    states = std::move(eve_stash);  // unencoded blocks travel on to Bob
  } else {
    for (int i = 0; i < n; ++i)
      states[i] = ops.combined[tr.A[i]][tr.Aprime[i]] * states[i];
  }
  tr.messages.push_back("q alice->bob: " + std::to_string(n) + " blocks");

  // A malicious center captures Alice's sequence and hands Bob fresh blocks.
  std::vector<CVector> center_stash;
  if (malicious) {
    center_stash = std::move(states);
    states.assign(n, enc.z0);
  }

  states = transmit_leg(std::move(states), cfg.noise, enc.physical_qubits, rng_noise);

  if (intercept) {
    for (int i = 0; i < n; ++i) {
      auto ir = internal::eve_intercept_resend(states[i], enc, rng_eve);
      states[i] = std::move(ir.resend);
      tr.eve_records.push_back(
          {i, tr.A[i], ir.guessed_a, op_from_bits(tr.A[i], tr.Aprime[i]), ir.guessed_op});
    }
  }

  // (c) Bob encodes with U^B then C^B' and returns the sequence.
  for (int i = 0; i < n; ++i)
    states[i] = ops.combined[tr.B[i]][tr.Bprime[i]] * states[i];
  tr.messages.push_back("q bob->center: " + std::to_string(n) + " blocks");
  states = transmit_leg(std::move(states), cfg.noise, enc.physical_qubits, rng_noise);

  // (d) conjugation bits are announced; the center corrects and measures.
  tr.messages.push_back("c alice->all: A' (" + std::to_string(n) + " bits)");
  tr.messages.push_back("c bob->all: B' (" + std::to_string(n) + " bits)");

  tr.center_outcomes.resize(n);
  if (malicious) {
    // The center decodes Alice's stash with A' and Bob's returns with B',
    // learning both words exactly, then announces the consistent XOR.
    for (int i = 0; i < n; ++i) {
      CVector sa = std::move(center_stash[i]);
      if (tr.Aprime[i]) sa = ops.c_dagger * sa;
      const int ra = measure_logical(sa, enc, LogicalBasis::Z, rng_center).logical_bit;
      CVector sb = std::move(states[i]);
      if (tr.Bprime[i]) sb = ops.c_dagger * sb;
      const int rb = measure_logical(sb, enc, LogicalBasis::Z, rng_center).logical_bit;
      tr.eve_records.push_back(
          {i, tr.A[i], ra, op_from_bits(tr.A[i], tr.Aprime[i]), op_from_bits(ra, tr.Aprime[i])});
      tr.center_outcomes[i] =
          (ra == kInconclusive || rb == kInconclusive) ? kInconclusive : (ra ^ rb);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const int t = tr.Aprime[i] + tr.Bprime[i];
      CVector s = std::move(states[i]);
      switch (center_correction(t)) {
        case CorrectionOp::identity:
          break;
        case CorrectionOp::c_inverse:
          s = ops.c_dagger * s;
          break;
        case CorrectionOp::u_flip:
          s = set.U * s;
          break;
      }
      tr.center_outcomes[i] = measure_logical(s, enc, LogicalBasis::Z, rng_center).logical_bit;
    }
  }
  tr.messages.push_back("c center->all: decode results (" + std::to_string(n) + " bits)");

  // (e) one collective eavesdropping check over m sampled positions.
  tr.check_positions = sample_positions(n, m, rng_center);
  tr.messages.push_back("c center->all: check positions (" + std::to_string(m) + ")");
  tr.messages.push_back("c alice->all: encode bits at checks");
  tr.messages.push_back("c bob->all: encode bits at checks");
  for (int p : tr.check_positions) {
    CheckRecord rec;
    rec.position = p;
    rec.alice_bit = tr.A[p];
    rec.bob_bit = tr.B[p];
    rec.decoded = tr.center_outcomes[p];
    rec.error = rec.decoded != (tr.A[p] ^ tr.B[p]);
    tr.announced_ops.push_back(rec);
  }
  const EavesdropCheckResult check = eavesdrop_check(tr.announced_ops, cfg.threshold);
  res.check_error_rate = check.error_rate;
  res.aborted = check.abort;
  tr.messages.push_back(res.aborted ? "c center->all: verdict abort"
                                    : "c center->all: verdict pass");

  std::vector<std::uint8_t> expected(n);
  for (int i = 0; i < n; ++i) expected[i] = tr.A[i] ^ tr.B[i];
  finalize_result(cfg, tr.center_outcomes, expected, &res);
  return res;
}

SessionResult run_dishonest_center(const ProtocolConfig& cfg) {
  cfg.validate();
  if (cfg.variant != Variant::dishonest_center)
    throw ConfigError("config variant does not match dishonest-center runner");

  const OperatorSet set = canonical_operator_set(cfg.encoding);
  const LogicalEncoding& enc = set.encoding;
  const EncodeOps ops = make_encode_ops(set);
  const int n = cfg.n;
  const int m = cfg.m;

  Rng rng_center(Rng::derive(cfg.seed, kStreamCenter));
  Rng rng_alice(Rng::derive(cfg.seed, kStreamAlice));
  Rng rng_bob(Rng::derive(cfg.seed, kStreamBob));
  Rng rng_noise(cfg.noise_seed ? Rng::derive(*cfg.noise_seed, kStreamNoise)
                               : Rng::derive(cfg.seed, kStreamNoise));
  Rng rng_eve(Rng::derive(cfg.seed, kStreamEve));

  SessionResult res;
  ProtocolTranscript& tr = res.transcript;
  tr.A = random_bits(n, rng_alice);
  tr.Aprime = random_bits(n, rng_alice);

  const bool malicious = cfg.attack.kind == AttackKind::malicious_center;
  const bool intercept = cfg.attack.kind == AttackKind::intercept_resend;

  // (S1-S2) center sends |0>_L blocks; Alice encodes and forwards to Bob.
  std::vector<CVector> states(n, enc.z0);
  tr.messages.push_back("q center->alice: " + std::to_string(n) + " blocks");
  states = transmit_leg(std::move(states), cfg.noise, enc.physical_qubits, rng_noise);
  for (int i = 0; i < n; ++i)
    states[i] = ops.combined[tr.A[i]][tr.Aprime[i]] * states[i];
  tr.messages.push_back("q alice->bob: " + std::to_string(n) + " blocks");

  std::vector<CVector> center_stash;
  if (malicious) {
    center_stash = std::move(states);
    states.assign(n, enc.z0);
  }
  states = transmit_leg(std::move(states), cfg.noise, enc.physical_qubits, rng_noise);
  if (intercept) {
    for (int i = 0; i < n; ++i) {
      auto ir = internal::eve_intercept_resend(states[i], enc, rng_eve);
      states[i] = std::move(ir.resend);
      tr.eve_records.push_back(
          {i, tr.A[i], ir.guessed_a, op_from_bits(tr.A[i], tr.Aprime[i]), ir.guessed_op});
    }
  }

  // (S3-S4) Bob confirms receipt, then Alice reveals the conjugation layer.
  tr.messages.push_back("c bob->alice: OK");
  tr.messages.push_back("c alice->bob: A' (" + std::to_string(n) + " bits)");

  // (S5) Bob strips C where A' = 1, shuffles with his secret permutation
  // and returns the sequence to the center.
  for (int i = 0; i < n; ++i)
    if (tr.Aprime[i]) states[i] = ops.c_dagger * states[i];

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng_bob.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  tr.permutation = perm;  // slot j carries original position perm[j]
  std::vector<CVector> shuffled(n);
  for (int j = 0; j < n; ++j) shuffled[j] = std::move(states[perm[j]]);
  tr.messages.push_back("q bob->center: " + std::to_string(n) + " blocks (shuffled)");
  shuffled = transmit_leg(std::move(shuffled), cfg.noise, enc.physical_qubits, rng_noise);

  // (S6) the center measures slot by slot and announces the results.
  tr.center_outcomes.resize(n);
  if (malicious) {
    // It heard A', so the stash yields Alice's word exactly; lacking Bob's
    // permutation it can only announce that word in slot order.
    for (int j = 0; j < n; ++j) {
      CVector sa = std::move(center_stash[j]);
      if (tr.Aprime[j]) sa = ops.c_dagger * sa;
      const int ra = measure_logical(sa, enc, LogicalBasis::Z, rng_center).logical_bit;
      tr.eve_records.push_back(
          {j, tr.A[j], ra, op_from_bits(tr.A[j], tr.Aprime[j]), op_from_bits(ra, tr.Aprime[j])});
      tr.center_outcomes[j] = ra;
    }
  } else {
    for (int j = 0; j < n; ++j)
      tr.center_outcomes[j] =
          measure_logical(shuffled[j], enc, LogicalBasis::Z, rng_center).logical_bit;
  }
  tr.messages.push_back("c center->all: C' (" + std::to_string(n) + " bits)");

  // (S7) Bob undoes the shuffle and audits m positions against Alice.
  std::vector<int> decoded(n, kInconclusive);
  for (int j = 0; j < n; ++j) decoded[perm[j]] = tr.center_outcomes[j];

  tr.check_positions = sample_positions(n, m, rng_bob);
  tr.messages.push_back("c bob->all: check positions (" + std::to_string(m) + ")");
  tr.messages.push_back("c alice->all: encode bits at checks");
  for (int p : tr.check_positions) {
    CheckRecord rec;
    rec.position = p;
    rec.alice_bit = tr.A[p];
    rec.bob_bit = -1;
    rec.decoded = decoded[p];
    rec.error = rec.decoded != tr.A[p];
    tr.announced_ops.push_back(rec);
  }
  const EavesdropCheckResult check = eavesdrop_check(tr.announced_ops, cfg.threshold);
  res.check_error_rate = check.error_rate;
  res.aborted = check.abort;
  tr.messages.push_back(res.aborted ? "c bob->all: verdict abort" : "c bob->all: verdict pass");

  finalize_result(cfg, decoded, tr.A, &res);
  return res;
}

SessionResult run_session(const ProtocolConfig& cfg) {
  return cfg.variant == Variant::honest_center ? run_honest_center(cfg)
                                               : run_dishonest_center(cfg);
}

std::vector<SessionResult> run_batch(const ProtocolConfig& cfg, int sessions) {
  if (sessions <= 0) throw ConfigError("session count must be positive");
  std::vector<SessionResult> out;
  out.reserve(sessions);
  for (int s = 0; s < sessions; ++s) {
    ProtocolConfig c = cfg;
    c.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    if (cfg.noise_seed) c.noise_seed = Rng::derive(*cfg.noise_seed, static_cast<std::uint64_t>(s));
    out.push_back(run_session(c));
  }
  return out;
}

BatchSummary summarize(const std::vector<SessionResult>& results) {
  if (results.empty()) throw BadCountError("summary needs at least one session");
  BatchSummary s;
  s.sessions = static_cast<int>(results.size());
  for (const SessionResult& r : results) {
    s.abort_fraction += r.aborted ? 1.0 : 0.0;
    s.mean_qber += r.qber;
    s.mean_check_error_rate += r.check_error_rate;
    s.key_rate = r.key_rate;
    s.keys_match_fraction += r.keys_match ? 1.0 : 0.0;
  }
  s.abort_fraction /= s.sessions;
  s.mean_qber /= s.sessions;
  s.mean_check_error_rate /= s.sessions;
  s.keys_match_fraction /= s.sessions;
  return s;
}

}  // namespace qkdcd
