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

#include <algorithm>
#include <numeric>

#include "qkdcd/protocol.hpp"

using namespace qkdcd;

namespace {

const EncodingName kAll[] = {EncodingName::single_photon, EncodingName::dephasing,
                             EncodingName::rotation, EncodingName::general4};

NoiseKind matching_noise(EncodingName name) {
  switch (name) {
    case EncodingName::dephasing:
      return NoiseKind::dephasing;
    case EncodingName::rotation:
      return NoiseKind::rotation;
    case EncodingName::general4:
      return NoiseKind::general_collective;
    default:
      return NoiseKind::none;
  }
}

ProtocolConfig small_config(Variant variant, EncodingName enc, NoiseKind noise,
                            std::uint64_t seed) {
  ProtocolConfig cfg;
  cfg.variant = variant;
  cfg.encoding = enc;
  cfg.n = 48;
  cfg.m = 12;
  cfg.noise.kind = noise;
  cfg.seed = seed;
  return cfg;
}

void check_clean_session(const SessionResult& r, const ProtocolConfig& cfg) {
  CHECK_FALSE(r.aborted);
  CHECK(r.check_error_rate == 0.0);
  CHECK(r.qber == 0.0);
  CHECK(r.keys_match);
  CHECK(r.key_rate == doctest::Approx(static_cast<double>(cfg.n - cfg.m) / cfg.n));
  CHECK(r.raw_key.size() == static_cast<std::size_t>(cfg.n - cfg.m));
}

int message_index(const std::vector<std::string>& msgs, const std::string& needle) {
  for (std::size_t i = 0; i < msgs.size(); ++i)
    if (msgs[i].find(needle) != std::string::npos) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("center corrections follow the conjugation count") {
  CHECK(center_correction(0) == CorrectionOp::identity);
  CHECK(center_correction(1) == CorrectionOp::c_inverse);
  CHECK(center_correction(2) == CorrectionOp::u_flip);
  CHECK_THROWS_AS(center_correction(3), BadCountError);
  CHECK_THROWS_AS(center_correction(-1), BadCountError);
}

TEST_CASE("config validation rejects malformed runs") {
  ProtocolConfig cfg = small_config(Variant::honest_center, EncodingName::dephasing,
                                    NoiseKind::none, 1);
  CHECK_NOTHROW(cfg.validate());
  ProtocolConfig bad = cfg;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.m = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.m = bad.n;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.threshold = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.threshold = -0.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.n = (1 << 20) + 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  // The probe substitution targets the preparing center, so it has no
  // meaning when Bob, not the center, closes the loop.
  bad = cfg;
  bad.variant = Variant::dishonest_center;
  bad.attack.kind = AttackKind::dense_coding_probe;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("eavesdrop check compares the error rate against the threshold") {
  std::vector<CheckRecord> records(8);
  records[1].error = records[5].error = true;
  const EavesdropCheckResult at = eavesdrop_check(records, 0.25);
  CHECK(at.error_rate == doctest::Approx(0.25));
  CHECK_FALSE(at.abort);  // strictly-above rule
  CHECK(eavesdrop_check(records, 0.24).abort);
  CHECK(eavesdrop_check({}, 0.0).abort == false);
}

TEST_CASE("noiseless attack-free sessions agree perfectly in both variants") {
  for (const EncodingName enc : kAll) {
    for (const Variant variant : {Variant::honest_center, Variant::dishonest_center}) {
      const ProtocolConfig cfg = small_config(variant, enc, NoiseKind::none, 1701);
      CAPTURE(to_string(enc));
      CAPTURE(to_string(variant));
      const SessionResult r = run_session(cfg);
      check_clean_session(r, cfg);

      const ProtocolTranscript& tr = r.transcript;
      CHECK(tr.A.size() == static_cast<std::size_t>(cfg.n));
      CHECK(tr.Aprime.size() == static_cast<std::size_t>(cfg.n));
      CHECK(tr.check_positions.size() == static_cast<std::size_t>(cfg.m));
      CHECK(std::is_sorted(tr.check_positions.begin(), tr.check_positions.end()));
      CHECK(std::adjacent_find(tr.check_positions.begin(), tr.check_positions.end()) ==
            tr.check_positions.end());
      CHECK(tr.center_outcomes.size() == static_cast<std::size_t>(cfg.n));
      CHECK(tr.announced_ops.size() == static_cast<std::size_t>(cfg.m));

      // The raw key matches the ground truth at the kept positions.
      std::vector<bool> is_check(cfg.n, false);
      for (int p : tr.check_positions) is_check[p] = true;
      std::size_t k = 0;
      for (int i = 0; i < cfg.n; ++i) {
        if (is_check[i]) continue;
        const int expect = variant == Variant::honest_center ? tr.A[i] ^ tr.B[i] : tr.A[i];
        CHECK(r.raw_key[k++] == expect);
      }

      if (variant == Variant::dishonest_center) {
        // Bob's shuffle is a genuine permutation, disclosed to nobody.
        std::vector<int> sorted = tr.permutation;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> iota(cfg.n);
        std::iota(iota.begin(), iota.end(), 0);
        CHECK(sorted == iota);
        CHECK(tr.B.empty());
        // Alice only reveals the conjugation layer after Bob holds the states.
        CHECK(message_index(tr.messages, "bob->alice: OK") <
              message_index(tr.messages, "alice->bob: A'"));
      } else {
        CHECK(tr.B.size() == static_cast<std::size_t>(cfg.n));
        CHECK(tr.Bprime.size() == static_cast<std::size_t>(cfg.n));
      }
    }
  }
}

TEST_CASE("matching collective noise leaves every session untouched") {
  for (const EncodingName enc : kAll) {
    for (const Variant variant : {Variant::honest_center, Variant::dishonest_center}) {
      ProtocolConfig cfg = small_config(variant, enc, matching_noise(enc), 90210);
      CAPTURE(to_string(enc));
      CAPTURE(to_string(variant));
      for (const SessionResult& r : run_batch(cfg, 5)) check_clean_session(r, cfg);
    }
  }
}

TEST_CASE("per-block resampling is equally harmless") {
  ProtocolConfig cfg = small_config(Variant::honest_center, EncodingName::general4,
                                    NoiseKind::general_collective, 4);
  cfg.noise.sampling = SamplingPolicy::per_block;
  check_clean_session(run_session(cfg), cfg);
}

TEST_CASE("an unprotected encoding breaks under mismatched noise") {
  ProtocolConfig cfg = small_config(Variant::honest_center, EncodingName::single_photon,
                                    NoiseKind::rotation, 12);
  cfg.threshold = 0.0;
  int aborted = 0;
  for (const SessionResult& r : run_batch(cfg, 10)) aborted += r.aborted ? 1 : 0;
  CHECK(aborted == 10);

  // With a lenient threshold the sessions finish, but the keys disagree.
  cfg.threshold = 0.99;
  double qber = 0.0;
  for (const SessionResult& r : run_batch(cfg, 10)) {
    CHECK_FALSE(r.aborted);
    qber += r.qber;
  }
  CHECK(qber / 10.0 > 0.1);
}

TEST_CASE("sessions are bit-for-bit reproducible per seed") {
  for (const Variant variant : {Variant::honest_center, Variant::dishonest_center}) {
    ProtocolConfig cfg = small_config(variant, EncodingName::rotation, NoiseKind::rotation,
                                      777);
    const SessionResult a = run_session(cfg);
    const SessionResult b = run_session(cfg);
    CHECK(a.transcript.A == b.transcript.A);
    CHECK(a.transcript.Aprime == b.transcript.Aprime);
    CHECK(a.transcript.B == b.transcript.B);
    CHECK(a.transcript.permutation == b.transcript.permutation);
    CHECK(a.transcript.check_positions == b.transcript.check_positions);
    CHECK(a.transcript.center_outcomes == b.transcript.center_outcomes);
    CHECK(a.transcript.messages == b.transcript.messages);
    CHECK(a.raw_key == b.raw_key);

    cfg.seed = 778;
    const SessionResult c = run_session(cfg);
    CHECK(a.transcript.A != c.transcript.A);  // different stream, different run
  }
}

TEST_CASE("batches derive one independent seed per session") {
  ProtocolConfig cfg = small_config(Variant::honest_center, EncodingName::dephasing,
                                    NoiseKind::dephasing, 31415);
  const auto batch = run_batch(cfg, 3);
  REQUIRE(batch.size() == 3);
  for (int i = 0; i < 3; ++i) {
    ProtocolConfig single = cfg;
    single.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(i));
    CHECK(run_session(single).transcript.A == batch[i].transcript.A);
  }
  CHECK(batch[0].transcript.A != batch[1].transcript.A);
}

TEST_CASE("summaries aggregate the session statistics") {
  ProtocolConfig cfg = small_config(Variant::dishonest_center, EncodingName::rotation,
                                    NoiseKind::rotation, 11);
  const auto batch = run_batch(cfg, 4);
  const BatchSummary s = summarize(batch);
  CHECK(s.sessions == 4);
  CHECK(s.abort_fraction == 0.0);
  CHECK(s.mean_qber == 0.0);
  CHECK(s.mean_check_error_rate == 0.0);
  CHECK(s.keys_match_fraction == 1.0);
  CHECK(s.key_rate == doctest::Approx(0.75));
  CHECK_THROWS_AS(summarize({}), BadCountError);
}

TEST_CASE("variant names round trip") {
  CHECK(variant_from_string("honest_center") == Variant::honest_center);
  CHECK(variant_from_string("dishonest_center") == Variant::dishonest_center);
  CHECK(to_string(Variant::dishonest_center) == "dishonest_center");
  CHECK_THROWS_AS(variant_from_string("bogus"), ConfigError);
  CHECK(attack_from_string("malicious_center") == AttackKind::malicious_center);
  CHECK(to_string(AttackKind::dense_coding_probe) == "dense_coding_probe");
  CHECK_THROWS_AS(attack_from_string("bogus"), ConfigError);
}
