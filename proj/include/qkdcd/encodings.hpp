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

#include <string>
#include <string_view>
#include <utility>

#include "qkdcd/linalg.hpp"

namespace qkdcd {

// Logical qubit encodings. Apart from the bare single-photon qubit, each
// encoding is a decoherence-free pair immune to one class of collective
// channel noise.
enum class EncodingName {
  single_photon,  // bare qubit, no protection
  dephasing,      // |0>_L = |01>, |1>_L = |10>
  rotation,       // |0>_L = (|00>+|11>)/sqrt2, |1>_L = (|01>-|10>)/sqrt2
  general4,       // 4-qubit singlet-sector pair, immune to any collective u
};

enum class NoiseKind { none, dephasing, rotation, general_collective };

// Conjugate partner basis: x0 = (z0 - i z1)/sqrt2, x1 = (z1 - i z0)/sqrt2.
// Exposed so callers (and tests) reproduce the stored X basis bit for bit.
std::pair<CVector, CVector> conjugate_partner_basis(const CVector& z0, const CVector& z1);

struct LogicalEncoding {
  EncodingName name;
  int physical_qubits;
  std::size_t dim;  // 2^physical_qubits
  CVector z0, z1;   // logical Z basis
  CVector x0, x1;   // logical X basis, derived from Z via the conjugate map
  NoiseKind noise_class;

  const CVector& z(int bit) const { return bit ? z1 : z0; }
  const CVector& x(int bit) const { return bit ? x1 : x0; }
};

LogicalEncoding make_encoding(EncodingName name);

EncodingName encoding_from_string(std::string_view s);
std::string to_string(EncodingName name);
NoiseKind noise_from_string(std::string_view s);
std::string to_string(NoiseKind kind);

// Dimension of the completely noise-immune subspace of n qubits
// (n even): n! / ((n/2)! (n/2 + 1)!), i.e. the Catalan number C_{n/2}.
long long df_dimension(int n_qubits);

// Squared overlaps |<x_i|z_j>|^2; all four equal 1/2 for a mutually
// unbiased pair.
struct UnbiasednessReport {
  double overlap[2][2];
};

UnbiasednessReport check_mutual_unbiasedness(const LogicalEncoding& enc);

}  // namespace qkdcd
