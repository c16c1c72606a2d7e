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

#include "qkdcd/encodings.hpp"

#include <cmath>

namespace qkdcd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

}  // namespace

std::pair<CVector, CVector> conjugate_partner_basis(const CVector& z0, const CVector& z1) {
  const std::size_t d = z0.dim();
  CVector x0(d), x1(d);
  const cplx mi(0.0, -1.0);
  for (std::size_t k = 0; k < d; ++k) {
    x0[k] = (z0[k] + mi * z1[k]) * kInvSqrt2;
    x1[k] = (z1[k] + mi * z0[k]) * kInvSqrt2;
  }
  return {x0, x1};
}

LogicalEncoding make_encoding(EncodingName name) {
  LogicalEncoding e;
  e.name = name;
  switch (name) {
    case EncodingName::single_photon: {
      e.physical_qubits = 1;
      e.dim = 2;
      e.z0 = CVector::basis_state(2, 0);
      e.z1 = CVector::basis_state(2, 1);
      e.noise_class = NoiseKind::none;
      break;
    }
    case EncodingName::dephasing: {
      e.physical_qubits = 2;
      e.dim = 4;
      e.z0 = CVector::basis_state(4, 1);  // |01>
      e.z1 = CVector::basis_state(4, 2);  // |10>
      e.noise_class = NoiseKind::dephasing;
      break;
    }
    case EncodingName::rotation: {
      e.physical_qubits = 2;
      e.dim = 4;
      CVector z0(4), z1(4);
      z0[0] = kInvSqrt2;  // (|00> + |11>)/sqrt2
      z0[3] = kInvSqrt2;
      z1[1] = kInvSqrt2;  // (|01> - |10>)/sqrt2
      z1[2] = -kInvSqrt2;
      e.z0 = z0;
      e.z1 = z1;
      e.noise_class = NoiseKind::rotation;
      break;
    }
    case EncodingName::general4: {
      e.physical_qubits = 4;
      e.dim = 16;
      CVector z0(16), z1(16);
      // Product of singlets: (|01>-|10>)(|01>-|10>)/2.
      z0[0b0101] = 0.5;
      z0[0b1010] = 0.5;
      z0[0b0110] = -0.5;
      z0[0b1001] = -0.5;
      // Orthogonal partner in the same zero-total-spin sector.
      const double c = 1.0 / (2.0 * std::sqrt(3.0));
      z1[0b0011] = 2.0 * c;
      z1[0b1100] = 2.0 * c;
      z1[0b0101] = -c;
      z1[0b1010] = -c;
      z1[0b0110] = -c;
      z1[0b1001] = -c;
      e.z0 = z0;
      e.z1 = z1;
      e.noise_class = NoiseKind::general_collective;
      break;
    }
    default:
      throw UnknownEncodingError("unknown encoding");
  }
  auto xs = conjugate_partner_basis(e.z0, e.z1);
  e.x0 = std::move(xs.first);
  e.x1 = std::move(xs.second);
  return e;
}

EncodingName encoding_from_string(std::string_view s) {
  if (s == "single_photon") return EncodingName::single_photon;
  if (s == "dephasing") return EncodingName::dephasing;
  if (s == "rotation") return EncodingName::rotation;
  if (s == "general4") return EncodingName::general4;
  throw UnknownEncodingError("unknown encoding: " + std::string(s));
}

std::string to_string(EncodingName name) {
  switch (name) {
    case EncodingName::single_photon:
      return "single_photon";
    case EncodingName::dephasing:
      return "dephasing";
    case EncodingName::rotation:
      return "rotation";
    case EncodingName::general4:
      return "general4";
  }
  throw UnknownEncodingError("unknown encoding");
}

NoiseKind noise_from_string(std::string_view s) {
  if (s == "none") return NoiseKind::none;
  if (s == "dephasing") return NoiseKind::dephasing;
  if (s == "rotation") return NoiseKind::rotation;
  if (s == "general_collective") return NoiseKind::general_collective;
  throw ConfigError("unknown noise kind: " + std::string(s));
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none:
      return "none";
    case NoiseKind::dephasing:
      return "dephasing";
    case NoiseKind::rotation:
      return "rotation";
    case NoiseKind::general_collective:
      return "general_collective";
  }
  throw ConfigError("unknown noise kind");
}

long long df_dimension(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw OddQubitCountError("qubit count must be even and >= 2");
  if (n_qubits > 40) throw TooLargeError("qubit count too large for exact arithmetic");
  // n!/((n/2)!(n/2+1)!) is the Catalan number C_{n/2} = binom(n, n/2)/(n/2+1).
  const int h = n_qubits / 2;
  unsigned long long binom = 1;
  for (int i = 1; i <= h; ++i) {
    binom = binom * static_cast<unsigned long long>(n_qubits - h + i) /
            static_cast<unsigned long long>(i);
  }
  return static_cast<long long>(binom / static_cast<unsigned long long>(h + 1));
}

UnbiasednessReport check_mutual_unbiasedness(const LogicalEncoding& enc) {
  UnbiasednessReport r;
  const CVector* xs[2] = {&enc.x0, &enc.x1};
  const CVector* zs[2] = {&enc.z0, &enc.z1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.overlap[i][j] = std::norm(inner(*xs[i], *zs[j]));
  return r;
}

}  // namespace qkdcd
