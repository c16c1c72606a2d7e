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

#include "eve_internal.hpp"

#include <cmath>

namespace qkdcd::internal {

InterceptResult eve_intercept_resend(const CVector& state, const LogicalEncoding& enc,
                                     Rng& rng) {
  InterceptResult res;
  res.basis = rng.below(2) == 0 ? LogicalBasis::Z : LogicalBasis::X;
  const MeasurementOutcome mo = measure_logical(state, enc, res.basis, rng);
  res.outcome = mo.logical_bit;
  if (mo.logical_bit == kInconclusive) {
    res.resend = mo.post_state;
    res.guessed_a = 0;
  } else {
    // Forward the canonical eigenstate for the observed outcome.
    const int b = mo.logical_bit;
    res.resend = res.basis == LogicalBasis::Z ? enc.z(b) : enc.x(b);
    res.guessed_a = b;
  }
  const int a = res.guessed_a;
  if (res.basis == LogicalBasis::Z) {
    res.guessed_op = a ? OpLabel::U : OpLabel::I;
  } else {
    res.guessed_op = a ? OpLabel::UC : OpLabel::C;
  }
  return res;
}

DenseCodingPlan make_dense_coding_plan(const OperatorSet& set) {
  const LogicalEncoding& enc = set.encoding;
  const CVector e0 = CVector::basis_state(2, 0);
  const CVector e1 = CVector::basis_state(2, 1);
  const cplx half_w(0.70710678118654752440084436210485, 0.0);

  DenseCodingPlan plan;
  plan.probe = (tensor(enc.z0, e0) + tensor(enc.z1, e1)) * half_w;

  const OpLabel labels[4] = {OpLabel::I, OpLabel::U, OpLabel::C, OpLabel::UC};
  std::array<CVector, 4> outputs;
  for (int g = 0; g < 4; ++g)
    outputs[g] = apply_left_factor(op(set, labels[g]), plan.probe, 2);

  // Candidate measurements: generalized Bell bases on the logical pair and
  // the ancilla, indexed by two unit phases.
  const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const CVector p00 = tensor(enc.z0, e0);
  const CVector p11 = tensor(enc.z1, e1);
  const CVector p01 = tensor(enc.z0, e1);
  const CVector p10 = tensor(enc.z1, e0);

  double best_score = -1.0;
  for (const cplx& wa : phases) {
    for (const cplx& wb : phases) {
      std::array<CVector, 4> basis = {
          (p00 + wa * p11) * half_w,
          (p00 - wa * p11) * half_w,
          (p01 + wb * p10) * half_w,
          (p01 - wb * p10) * half_w,
      };
      std::array<OpLabel, 4> guess;
      double score = 0.0;
      for (int k = 0; k < 4; ++k) {
        double pmax = -1.0;
        OpLabel arg = OpLabel::I;
        for (int g = 0; g < 4; ++g) {
          const double p = std::norm(inner(basis[k], outputs[g]));
          if (p > pmax + 1e-15) {
            pmax = p;
            arg = labels[g];
          }
        }
        guess[k] = arg;
        score += 0.25 * pmax;
      }
      if (score > best_score + 1e-12) {
        best_score = score;
        plan.meas = basis;
        plan.guess = guess;
      }
    }
  }
  plan.predicted_accuracy = best_score;
  return plan;
}

int dense_coding_measure(const DenseCodingPlan& plan, const CVector& joint, Rng& rng) {
  double probs[4];
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    probs[k] = std::norm(inner(plan.meas[k], joint));
    total += probs[k];
  }
  const double rest = std::max(0.0, 1.0 - total);
  const double u = rng.uniform01() * (total + rest);
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    acc += probs[k];
    if (u < acc) return k;
  }
  return 4;
}

PairMeasurement helstrom_pair_measurement(const CVector& a, const CVector& b) {
  // Orthonormal frame of span{a, b}.
  CVector f0 = a.normalized();
  CVector g = b;
  const cplx ov = inner(f0, g);
  for (std::size_t k = 0; k < g.dim(); ++k) g[k] -= ov * f0[k];
  const double gn = g.norm();
  PairMeasurement m;
  if (gn < 1e-12) {
    // States identical up to phase: no measurement helps; any frame works.
    m.w0 = f0;
    m.w1 = CVector(f0.dim());
    return m;
  }
  const CVector f1 = g * cplx(1.0 / gn, 0.0);

  // In this frame a = (1, 0), b = (beta0, beta1). Diagonalize the 2x2
  // Hermitian difference |a><a| - |b><b| directly.
  const cplx b0 = inner(f0, b.normalized());
  const cplx b1 = inner(f1, b.normalized());
  const double h00 = 1.0 - std::norm(b0);
  const double h11 = -std::norm(b1);
  const cplx h01 = -b0 * std::conj(b1);
  const double tr = h00 + h11;
  const double det = h00 * h11 - std::norm(h01);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lp = tr / 2.0 + disc;  // positive eigenvalue
  // Eigenvector for lp: (h01, lp - h00) or (lp - h11, conj(h01)).
  cplx v0, v1;
  if (std::abs(lp - h00) > std::abs(h01)) {
    v0 = h01;
    v1 = cplx(lp - h00, 0.0);
  } else {
    v0 = cplx(lp - h11, 0.0);
    v1 = std::conj(h01);
  }
  const double nn = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= nn;
  v1 /= nn;
  m.w0 = f0 * v0 + f1 * v1;                          // favors a
  m.w1 = f0 * (-std::conj(v1)) + f1 * std::conj(v0); // orthogonal partner
  return m;
}

int pair_measure(const PairMeasurement& m, const CVector& state, Rng& rng) {
  const double p0 = std::norm(inner(m.w0, state));
  const double p1 = std::norm(inner(m.w1, state));
  const double rest = std::max(0.0, 1.0 - p0 - p1);
  const double u = rng.uniform01() * (p0 + p1 + rest);
  if (u < p0) return 0;
  if (u < p0 + p1) return 1;
  return 2;
}

}  // namespace qkdcd::internal
