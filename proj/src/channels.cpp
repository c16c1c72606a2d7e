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

#include "qkdcd/channels.hpp"

#include <cmath>

namespace qkdcd {

SamplingPolicy sampling_from_string(std::string_view s) {
  if (s == "per_leg") return SamplingPolicy::per_leg;
  if (s == "per_block") return SamplingPolicy::per_block;
  throw ConfigError("unknown sampling policy: " + std::string(s));
}

std::string to_string(SamplingPolicy p) {
  return p == SamplingPolicy::per_leg ? "per_leg" : "per_block";
}

NoiseParameter sample_noise(const NoiseModel& model, Rng& rng) {
  NoiseParameter p;
  p.kind = model.kind;
  switch (model.kind) {
    case NoiseKind::none:
      p.single_qubit = CMatrix::identity(2);
      break;
    case NoiseKind::dephasing: {
      p.angle = rng.uniform_angle();
      p.single_qubit = CMatrix::from_rows(
          {{1, 0}, {0, cplx(std::cos(p.angle), std::sin(p.angle))}});
      break;
    }
    case NoiseKind::rotation: {
      p.angle = rng.uniform_angle();
      const double c = std::cos(p.angle);
      const double s = std::sin(p.angle);
      p.single_qubit = CMatrix::from_rows({{c, -s}, {s, c}});
      break;
    }
    case NoiseKind::general_collective:
      p.single_qubit = random_unitary(2, rng);
      break;
  }
  return p;
}

CVector apply_collective_noise(const CVector& state, const NoiseParameter& parameter,
                               int n_qubits) {
  if (state.dim() != (std::size_t{1} << n_qubits))
    throw DimensionMismatchError("state dimension does not match qubit count");
  if (parameter.kind == NoiseKind::none) return state;

  const CMatrix& u = parameter.single_qubit;
  const cplx u00 = u.at(0, 0), u01 = u.at(0, 1), u10 = u.at(1, 0), u11 = u.at(1, 1);
  CVector out = state;
  // Same 2x2 on every tensor factor. Bit t counts from the least
  // significant position; collective noise makes the ordering immaterial.
  for (int t = 0; t < n_qubits; ++t) {
    const std::size_t mask = std::size_t{1} << t;
    for (std::size_t i = 0; i < out.dim(); ++i) {
      if (i & mask) continue;
      const cplx a0 = out[i];
      const cplx a1 = out[i | mask];
      out[i] = u00 * a0 + u01 * a1;
      out[i | mask] = u10 * a0 + u11 * a1;
    }
  }
  return out;
}

MeasurementOutcome measure_logical(const CVector& state, const LogicalEncoding& enc,
                                   LogicalBasis basis, Rng& rng) {
  if (state.dim() != enc.dim)
    throw DimensionMismatchError("state dimension does not match encoding");
  const CVector& b0 = basis == LogicalBasis::Z ? enc.z0 : enc.x0;
  const CVector& b1 = basis == LogicalBasis::Z ? enc.z1 : enc.x1;

  const cplx a0 = inner(b0, state);
  const cplx a1 = inner(b1, state);
  const double p0 = std::norm(a0);
  const double p1 = std::norm(a1);
  const double prest = std::max(0.0, 1.0 - p0 - p1);

  MeasurementOutcome out;
  const double u = rng.uniform01() * (p0 + p1 + prest);
  if (u < p0) {
    out.logical_bit = 0;
    out.probability = p0;
    out.post_state = b0 * (a0 / std::abs(a0));
  } else if (u < p0 + p1) {
    out.logical_bit = 1;
    out.probability = p1;
    out.post_state = b1 * (a1 / std::abs(a1));
  } else {
    out.logical_bit = kInconclusive;
    out.probability = prest;
    CVector resid = state;
    for (std::size_t k = 0; k < resid.dim(); ++k) resid[k] -= a0 * b0[k] + a1 * b1[k];
    out.post_state = resid.normalized();
  }
  return out;
}

std::vector<CVector> transmit_leg(std::vector<CVector> states, const NoiseModel& model,
                                  int n_qubits, Rng& rng) {
  if (model.kind == NoiseKind::none) return states;
  if (model.sampling == SamplingPolicy::per_leg) {
    const NoiseParameter p = sample_noise(model, rng);
    for (CVector& s : states) s = apply_collective_noise(s, p, n_qubits);
  } else {
    for (CVector& s : states) {
      const NoiseParameter p = sample_noise(model, rng);
      s = apply_collective_noise(s, p, n_qubits);
    }
  }
  return states;
}

}  // namespace qkdcd
