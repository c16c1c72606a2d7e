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
#include <vector>

#include "qkdcd/encodings.hpp"
#include "qkdcd/linalg.hpp"

namespace qkdcd {

// How the encoding operator U acts outside the logical subspace. The
// logical action (a bit flip between z0 and z1) is fixed; the complement
// block M only has to be unitary on the orthogonal complement.
enum class ComplementRecipe {
  identity_on_complement,  // M = sum_k |b_k><b_k|
  cyclic_shift,            // M = |b_2><b_3| + ... + |b_{d-1}><b_2|
};

ComplementRecipe recipe_from_string(std::string_view s);
std::string to_string(ComplementRecipe r);

enum class OpLabel { I, U, C, UC };

std::string to_string(OpLabel l);

// The four encoding operations {I, U, C, UC} used by the key agreement
// protocols, together with construction provenance.
struct OperatorSet {
  LogicalEncoding encoding;
  ComplementRecipe recipe;
  CMatrix I, U, C, UC;
  CMatrix complement;              // the M block of U
  std::vector<CVector> full_basis; // logical pair followed by completion
  std::vector<double> u_phases;    // eigenvalue phases of U
  std::vector<double> c_phases;    // eigenvalue phases of C (halved branch)
};

const CMatrix& op(const OperatorSet& set, OpLabel label);

// Builds U = |z0><z1| + |z1><z0| + M and C = principal_sqrt(U).
OperatorSet build_operator_set(const LogicalEncoding& enc, ComplementRecipe recipe);

// Default recipe used for each encoding's canonical operator set.
ComplementRecipe canonical_recipe(EncodingName name);

// Operator set with the canonical complement recipe for the encoding.
OperatorSet canonical_operator_set(EncodingName name);

// Fixed reference matrices for the encodings whose U and C have published
// closed forms (single_photon, dephasing, rotation).
CMatrix reference_encoding_matrix(EncodingName name);
CMatrix reference_control_matrix(EncodingName name);

// One verified basis-state action of U or C.
struct FlipAction {
  OpLabel op;
  std::string input;   // "z0", "z1", "x0", "x1"
  std::string target;
  cplx phase;          // realized <target| op |input>
  double residual;     // || op|input> - phase*|target> ||_inf
  bool pass;
};

struct FlipActionReport {
  std::vector<FlipAction> actions;
  bool all_pass = false;
};

// Checks the eight required actions: U swaps partners inside each logical
// basis; C maps Z states to X states and X states back to Z states.
FlipActionReport verify_flip_actions(const OperatorSet& set);

}  // namespace qkdcd
