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

#include <optional>
#include <vector>

#include "qkdcd/encodings.hpp"
#include "qkdcd/linalg.hpp"
#include "qkdcd/rng.hpp"

namespace qkdcd {

// Collective noise: the same unknown single-qubit unitary hits every qubit
// of a traveling block. `per_leg` draws one unitary per channel use for the
// whole sequence; `per_block` redraws it for every logical state.
enum class SamplingPolicy { per_leg, per_block };

SamplingPolicy sampling_from_string(std::string_view s);
std::string to_string(SamplingPolicy p);

struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  SamplingPolicy sampling = SamplingPolicy::per_leg;
};

// One concrete draw from a noise model.
struct NoiseParameter {
  NoiseKind kind = NoiseKind::none;
  double angle = 0.0;      // phi or theta; unused for general_collective
  CMatrix single_qubit;    // the 2x2 unitary applied to every qubit
};

// dephasing: diag(1, e^{i phi}); rotation: planar rotation by theta; both
// with angles uniform in [0, 2*pi). general_collective: Haar-random 2x2.
NoiseParameter sample_noise(const NoiseModel& model, Rng& rng);

// Applies parameter.single_qubit to each of the n_qubits tensor factors.
CVector apply_collective_noise(const CVector& state, const NoiseParameter& parameter,
                               int n_qubits);

inline constexpr int kInconclusive = -1;

struct MeasurementOutcome {
  int logical_bit = kInconclusive;  // 0, 1 or kInconclusive
  double probability = 0.0;         // Born probability of the realized branch
  CVector post_state;               // normalized projection
};

enum class LogicalBasis { Z, X };

// Projective measurement onto {b0, b1, rest} for the chosen logical basis.
// Physical states outside the logical subspace yield the inconclusive
// outcome with the leftover probability.
MeasurementOutcome measure_logical(const CVector& state, const LogicalEncoding& enc,
                                   LogicalBasis basis, Rng& rng);

// Sends a sequence through one noisy channel leg.
std::vector<CVector> transmit_leg(std::vector<CVector> states, const NoiseModel& model,
                                  int n_qubits, Rng& rng);

}  // namespace qkdcd
