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

#include <array>
#include <vector>

#include "qkdcd/operator_sets.hpp"

namespace qkdcd {

// Distance from the complex-plane origin to the convex hull of the
// eigenvalues of a unitary. Zero iff the origin lies inside (or on) the
// hull, in which case no input state can separate the operator from a
// phase: two unitaries u1, u2 are perfectly distinguishable with one probe
// exactly when this distance vanishes for u1^dagger u2.
double eigenvalue_hull_distance(const CMatrix& u);

// Minimum achievable error probability when guessing which of two unitaries
// (with prior probabilities p1, p2) acted on an optimally chosen probe:
// 1/2 (1 - sqrt(1 - 4 p1 p2 r^2)) with r the hull distance of u1^dagger u2.
double min_error_probability(const CMatrix& u1, const CMatrix& u2, double p1, double p2);

// For each operator, whether it can be identified unambiguously within the
// set: true iff its vectorization lies outside the span of the others'
// vectorizations (residual norm above 1e-8 after projection).
std::vector<bool> unambiguous_set_check(const std::vector<CMatrix>& ops);

struct PairResult {
  OpLabel a, b;
  double r;
  double p_error_min;
  bool precisely_discriminable;  // r == 0 within tolerance
};

// Discrimination profile of a full operator set {I, U, C, UC}.
struct DiscriminationReport {
  double p1 = 0.5, p2 = 0.5;
  std::vector<PairResult> pairs;            // the six unordered pairs
  std::array<bool, 4> unambiguous{};        // per operator, order I,U,C,UC
  std::array<std::vector<cplx>, 4> eigenvalues;
  // r(C) appears in three equivalent guises; recorded for cross-checking.
  double r_c = 0.0;       // r(C)
  double r_i_c = 0.0;     // r(I^dagger C)
  double r_u_uc = 0.0;    // r(U^dagger UC)
  double r_c_dag = 0.0;   // r(C^dagger)
  double r_u_c = 0.0;     // r(U^dagger C)
  bool identities_hold = false;
};

DiscriminationReport analyze_operator_set(const OperatorSet& set, double p1 = 0.5,
                                          double p2 = 0.5);

}  // namespace qkdcd
