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

#include "qkdcd/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkdcd/discrimination.hpp"
#include "eve_internal.hpp"

namespace qkdcd {

namespace {

// Probability that a Z measurement of `state` does NOT return `want`
// (counting the inconclusive branch as an error).
double z_error_probability(const CVector& state, const LogicalEncoding& enc, int want) {
  const CVector& good = want ? enc.z1 : enc.z0;
  return 1.0 - std::norm(inner(good, state));
}

double sum_terms(std::vector<double> terms, bool reversed) {
  if (reversed) std::reverse(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

// Exact detection for intercept-resend: enumerate Alice's (and in the
// honest variant Bob's) bits, Eve's basis coin and outcome, and the final
// Born branches.
double oracle_intercept_resend(const OperatorSet& set, Variant variant, bool reversed) {
  const LogicalEncoding& enc = set.encoding;
  const CMatrix combined[2][2] = {{set.I, set.C}, {set.U, set.C * set.U}};
  const CMatrix cdag = set.C.adjoint();

  std::vector<double> terms;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      const CVector s1 = combined[a][ap] * enc.z0;
      for (int basis = 0; basis < 2; ++basis) {
        for (int k = 0; k < 2; ++k) {
          const CVector& eig = basis == 0 ? enc.z(k) : enc.x(k);
          const double p_eve = std::norm(inner(eig, s1));
          if (p_eve < 1e-300) continue;
          const double w = (1.0 / 4.0) * 0.5 * p_eve;
          if (variant == Variant::honest_center) {
            for (int b = 0; b < 2; ++b) {
              for (int bp = 0; bp < 2; ++bp) {
                CVector s2 = combined[b][bp] * eig;
                switch (center_correction(ap + bp)) {
                  case CorrectionOp::identity:
                    break;
                  case CorrectionOp::c_inverse:
                    s2 = cdag * s2;
                    break;
                  case CorrectionOp::u_flip:
                    s2 = set.U * s2;
                    break;
                }
                terms.push_back(w * 0.25 * z_error_probability(s2, enc, a ^ b));
              }
            }
          } else {
            CVector s2 = eig;
            if (ap) s2 = cdag * s2;
            terms.push_back(w * z_error_probability(s2, enc, a));
          }
        }
      }
    }
  }
  return sum_terms(std::move(terms), reversed);
}

// Exact detection for the probe attack: Bob encodes on Eve's forwarded
// unencoded block, so only the correction mismatch matters.
double oracle_dense_coding(const OperatorSet& set, bool reversed) {
  const LogicalEncoding& enc = set.encoding;
  const CMatrix combined[2][2] = {{set.I, set.C}, {set.U, set.C * set.U}};
  const CMatrix cdag = set.C.adjoint();

  std::vector<double> terms;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) {
          CVector s = combined[b][bp] * enc.z0;
          switch (center_correction(ap + bp)) {
            case CorrectionOp::identity:
              break;
            case CorrectionOp::c_inverse:
              s = cdag * s;
              break;
            case CorrectionOp::u_flip:
              s = set.U * s;
              break;
          }
          terms.push_back((1.0 / 16.0) * z_error_probability(s, enc, a ^ b));
        }
  return sum_terms(std::move(terms), reversed);
}

// Malicious center against the shuffled variant: the center knows Alice's
// word but announces it in slot order; a check at position i fails when
// Bob's permutation moved a different, disagreeing bit there. Enumerated
// over all permutations and uniform bit pairs.
double oracle_malicious_shuffle(int n, bool reversed) {
  if (n < 2 || n > 10) throw TooLargeError("permutation enumeration needs 2 <= n <= 10");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total_perms = 1.0;
  for (int i = 2; i <= n; ++i) total_perms *= i;

  std::vector<double> terms;
  do {
    int mismatched = 0;
    for (int i = 0; i < n; ++i)
      if (perm[i] != i) ++mismatched;
    // P(A_perm(i) != A_i) = 1/2 exactly when perm(i) != i.
    terms.push_back(static_cast<double>(mismatched) / n * 0.5 / total_perms);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum_terms(std::move(terms), reversed);
}

}  // namespace

double detection_oracle(AttackKind kind, const OperatorSet& set, Variant variant, int n,
                        bool reversed) {
  if (set.encoding.dim > 16) throw TooLargeError("operator set too large to enumerate");
  switch (kind) {
    case AttackKind::none:
      return 0.0;
    case AttackKind::intercept_resend:
      return oracle_intercept_resend(set, variant, reversed);
    case AttackKind::dense_coding_probe:
      if (variant != Variant::honest_center)
        throw ConfigError("dense_coding_probe targets the honest-center variant only");
      return oracle_dense_coding(set, reversed);
    case AttackKind::malicious_center:
      if (variant == Variant::honest_center) return 0.0;  // undetectable there
      return oracle_malicious_shuffle(n, reversed);
  }
  throw ConfigError("unknown attack kind");
}

double mutual_information_mm(const std::array<std::array<long, 2>, 2>& counts) {
  long n = 0;
  for (const auto& row : counts)
    for (long c : row) n += c;
  if (n == 0) return 0.0;

  const double dn = static_cast<double>(n);
  auto h_term = [&](long c) {
    if (c == 0) return 0.0;
    const double p = c / dn;
    return -p * std::log2(p);
  };

  const long rx[2] = {counts[0][0] + counts[0][1], counts[1][0] + counts[1][1]};
  const long ry[2] = {counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]};
  double hx = h_term(rx[0]) + h_term(rx[1]);
  double hy = h_term(ry[0]) + h_term(ry[1]);
  double hxy = 0.0;
  int kx = 0, ky = 0, kxy = 0;
  for (int i = 0; i < 2; ++i) {
    if (rx[i] > 0) ++kx;
    if (ry[i] > 0) ++ky;
    for (int j = 0; j < 2; ++j) {
      hxy += h_term(counts[i][j]);
      if (counts[i][j] > 0) ++kxy;
    }
  }
  const double mi = hx + hy - hxy;
  const double correction =
      ((kx - 1) + (ky - 1) - (kxy - 1)) / (2.0 * dn * std::log(2.0));
  return mi + correction;
}

AttackReport attack_report_from(const ProtocolConfig& cfg,
                                const std::vector<SessionResult>& results) {
  if (results.empty()) throw BadCountError("attack report needs at least one session");
  const OperatorSet set = canonical_operator_set(cfg.encoding);

  AttackReport rep;
  rep.kind = cfg.attack.kind;
  rep.variant = cfg.variant;
  rep.encoding = cfg.encoding;
  rep.sessions = static_cast<int>(results.size());

  long errors = 0;
  long op_total = 0, op_correct = 0;
  std::array<std::array<long, 2>, 2> joint = {{{0, 0}, {0, 0}}};
  for (const SessionResult& r : results) {
    for (const CheckRecord& c : r.transcript.announced_ops) {
      ++rep.check_events;
      if (c.error) ++errors;
    }
    for (const EveRecord& e : r.transcript.eve_records) {
      ++op_total;
      joint[e.true_a & 1][e.guessed_a & 1] += 1;
      if (e.true_op == e.guessed_op) ++op_correct;
    }
    rep.induced_qber += r.qber;
    rep.abort_fraction += r.aborted ? 1.0 : 0.0;
  }
  rep.induced_qber /= results.size();
  rep.abort_fraction /= results.size();

  try {
    rep.oracle_detection = detection_oracle(cfg.attack.kind, set, cfg.variant, cfg.n);
    rep.oracle_available = true;
  } catch (const TooLargeError&) {
    rep.oracle_available = false;
  }
  BinomialEstimate& det = rep.per_check_detection;
  det.trials = rep.check_events;
  det.p = rep.check_events > 0 ? static_cast<double>(errors) / rep.check_events : 0.0;
  const double sp = rep.oracle_available ? rep.oracle_detection : det.p;
  det.sigma = rep.check_events > 0 ? std::sqrt(sp * (1.0 - sp) / rep.check_events) : 0.0;
  det.lo3 = det.p - 3.0 * det.sigma;
  det.hi3 = det.p + 3.0 * det.sigma;

  if (op_total > 0) {
    rep.eve_information = mutual_information_mm(joint);
    rep.guess_accuracy = static_cast<double>(op_correct) / op_total;
  }
  return rep;
}

AttackReport run_attack_batch(const ProtocolConfig& cfg, int sessions) {
  return attack_report_from(cfg, run_batch(cfg, sessions));
}

GameResult run_discrimination_game(const OperatorSet& set, ProbeStrategy strategy,
                                   long trials, std::uint64_t seed) {
  if (trials <= 0) throw ConfigError("trial count must be positive");
  const LogicalEncoding& enc = set.encoding;
  Rng rng(seed);

  GameResult res;
  res.strategy = strategy;
  res.trials = trials;
  res.bound = min_error_probability(set.U, set.C, 0.5, 0.5);

  // Precompute strategy fixtures.
  const CVector probe_u = set.U * enc.z0;
  const CVector probe_c = set.C * enc.z0;
  CVector ent_u, ent_c;
  internal::PairMeasurement helstrom;
  if (strategy == ProbeStrategy::entangled_helstrom) {
    const CVector e0 = CVector::basis_state(2, 0);
    const CVector e1 = CVector::basis_state(2, 1);
    const cplx w(0.70710678118654752440084436210485, 0.0);
    const CVector probe = (tensor(enc.z0, e0) + tensor(enc.z1, e1)) * w;
    ent_u = apply_left_factor(set.U, probe, 2);
    ent_c = apply_left_factor(set.C, probe, 2);
    helstrom = internal::helstrom_pair_measurement(ent_u, ent_c);
  }

  for (long t = 0; t < trials; ++t) {
    const bool is_u = rng.below(2) == 0;
    bool guess_u = false;
    switch (strategy) {
      case ProbeStrategy::logical_z_probe: {
        const MeasurementOutcome mo =
            measure_logical(is_u ? probe_u : probe_c, enc, LogicalBasis::Z, rng);
        guess_u = mo.logical_bit == 1;
        break;
      }
      case ProbeStrategy::entangled_helstrom: {
        const int k = internal::pair_measure(helstrom, is_u ? ent_u : ent_c, rng);
        guess_u = k == 0;
        break;
      }
      case ProbeStrategy::random_basis_probe: {
        const bool use_x = rng.below(2) == 1;
        const MeasurementOutcome mo = measure_logical(
            is_u ? probe_u : probe_c, enc, use_x ? LogicalBasis::X : LogicalBasis::Z, rng);
        // Maximum likelihood: outcome 1 points to U in either basis.
        guess_u = mo.logical_bit == 1;
        break;
      }
    }
    if (guess_u != is_u) ++res.errors;
  }
  res.error_rate = static_cast<double>(res.errors) / trials;
  res.sigma = std::sqrt(res.bound * (1.0 - res.bound) / trials);
  return res;
}

}  // namespace qkdcd
