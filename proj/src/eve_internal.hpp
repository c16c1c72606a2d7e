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

// Eavesdropper mechanics shared by the session runner and the attack
// analysis layer. Internal to the library.

#pragma once

#include <array>

#include "qkdcd/channels.hpp"
#include "qkdcd/operator_sets.hpp"
#include "qkdcd/rng.hpp"

namespace qkdcd::internal {

// Measure in a random logical basis (Z or X, fair coin), then forward the
// collapsed eigenstate. The outcome bit doubles as Eve's guess of the
// encode bit: it is correct whenever her basis matches the conjugation
// layer, and uniform otherwise.
struct InterceptResult {
  CVector resend;
  LogicalBasis basis;
  int outcome = kInconclusive;
  int guessed_a = 0;
  OpLabel guessed_op = OpLabel::I;
};

InterceptResult eve_intercept_resend(const CVector& state, const LogicalEncoding& enc,
                                     Rng& rng);

// Entangled-probe attack: Eve swaps the traveling block for one half of a
// maximally entangled pair, lets Alice encode on it and measures the joint
// state. All four encodings leave the joint output inside the span of
// |I> = (|z0 e0> + |z1 e1>)/sqrt2 and |U> = (|z1 e0> + |z0 e1>)/sqrt2, so a
// four-outcome orthonormal measurement can at best pin down half the
// ensemble.
struct DenseCodingPlan {
  CVector probe;                    // dim 2d
  std::array<CVector, 4> meas;      // orthonormal; residual mass -> outcome 4
  std::array<OpLabel, 4> guess;     // maximum-likelihood map per outcome
  double predicted_accuracy = 0.0;  // four-way success of the chosen basis
};

DenseCodingPlan make_dense_coding_plan(const OperatorSet& set);

// Returns outcome index 0..3, or 4 for the residual (never realized when the
// input stays in the measured span).
int dense_coding_measure(const DenseCodingPlan& plan, const CVector& joint, Rng& rng);

// Two-outcome Helstrom measurement for a pair of pure states: projectors
// onto the positive/negative eigenvectors of |a><a| - |b><b| restricted to
// their span. Outcome 0 favors a, outcome 1 favors b, outcome 2 is the
// residual outside the span.
struct PairMeasurement {
  CVector w0, w1;
};

PairMeasurement helstrom_pair_measurement(const CVector& a, const CVector& b);

int pair_measure(const PairMeasurement& m, const CVector& state, Rng& rng);

}  // namespace qkdcd::internal
