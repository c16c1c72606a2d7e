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

#include "qkdcd/operator_sets.hpp"

#include <cmath>

namespace qkdcd {

ComplementRecipe recipe_from_string(std::string_view s) {
  if (s == "identity_on_complement" || s == "identity") return ComplementRecipe::identity_on_complement;
  if (s == "cyclic_shift" || s == "cyclic") return ComplementRecipe::cyclic_shift;
  throw ConfigError("unknown complement recipe: " + std::string(s));
}

std::string to_string(ComplementRecipe r) {
  return r == ComplementRecipe::identity_on_complement ? "identity_on_complement"
                                                       : "cyclic_shift";
}

std::string to_string(OpLabel l) {
  switch (l) {
    case OpLabel::I:
      return "I";
    case OpLabel::U:
      return "U";
    case OpLabel::C:
      return "C";
    case OpLabel::UC:
      return "UC";
  }
  throw Error("unknown operator label");
}

const CMatrix& op(const OperatorSet& set, OpLabel label) {
  switch (label) {
    case OpLabel::I:
      return set.I;
    case OpLabel::U:
      return set.U;
    case OpLabel::C:
      return set.C;
    case OpLabel::UC:
      return set.UC;
  }
  throw Error("unknown operator label");
}

OperatorSet build_operator_set(const LogicalEncoding& enc, ComplementRecipe recipe) {
  const std::size_t d = enc.dim;
  OperatorSet set;
  set.encoding = enc;
  set.recipe = recipe;
  set.full_basis = gram_schmidt({enc.z0, enc.z1}, d);

  CMatrix m(d, d);
  if (recipe == ComplementRecipe::cyclic_shift) {
    if (d < 4) throw RecipeInfeasibleError("cyclic shift needs a complement of dimension >= 2");
    for (std::size_t k = 2; k < d; ++k) {
      const std::size_t next = (k == d - 1) ? 2 : k + 1;
      m += CMatrix::outer(set.full_basis[k], set.full_basis[next]);
    }
  } else {
    for (std::size_t k = 2; k < d; ++k)
      m += CMatrix::outer(set.full_basis[k], set.full_basis[k]);
  }
  set.complement = m;

  set.U = CMatrix::outer(enc.z0, enc.z1) + CMatrix::outer(enc.z1, enc.z0) + m;
  if (!set.U.is_unitary(1e-10)) throw NonUnitaryResultError("constructed U is not unitary");

  set.C = principal_sqrt(set.U);
  if (!set.C.is_unitary(1e-10)) throw NonUnitaryResultError("constructed C is not unitary");
  if ((set.C * set.C).max_abs_diff(set.U) > 1e-9)
    throw NonUnitaryResultError("constructed C does not square to U");

  set.I = CMatrix::identity(d);
  set.UC = set.U * set.C;

  set.u_phases = spectral_decompose(set.U).phases;
  set.c_phases = spectral_decompose(set.C).phases;
  return set;
}

ComplementRecipe canonical_recipe(EncodingName name) {
  switch (name) {
    case EncodingName::single_photon:
      return ComplementRecipe::identity_on_complement;  // no complement at all
    case EncodingName::dephasing:
    case EncodingName::rotation:
      return ComplementRecipe::cyclic_shift;
    case EncodingName::general4:
      // Identity on the 14-dimensional complement keeps U an involution on
      // the whole space, so C = (1+i)/2 (I - iU) stays inside
      // span{I, U, UC} and the set remains safe against unambiguous
      // discrimination. A cyclic complement would break that containment.
      return ComplementRecipe::identity_on_complement;
  }
  throw UnknownEncodingError("unknown encoding");
}

OperatorSet canonical_operator_set(EncodingName name) {
  return build_operator_set(make_encoding(name), canonical_recipe(name));
}

CMatrix reference_encoding_matrix(EncodingName name) {
  switch (name) {
    case EncodingName::single_photon:
      return CMatrix::from_rows({{0, 1}, {1, 0}});
    case EncodingName::dephasing:
      return CMatrix::from_rows({{0, 0, 0, 1},  //
                                 {0, 0, 1, 0},
                                 {0, 1, 0, 0},
                                 {1, 0, 0, 0}});
    case EncodingName::rotation:
      return CMatrix::from_rows({{0, 1, 0, 0},  //
                                 {1, 0, 0, 0},
                                 {0, 0, 0, -1},
                                 {0, 0, -1, 0}});
    default:
      throw UnknownEncodingError("no published closed form for this encoding");
  }
}

CMatrix reference_control_matrix(EncodingName name) {
  const cplx a(0.5, 0.5);   // (1+i)/2
  const cplx mi(0.0, -1.0);
  switch (name) {
    case EncodingName::single_photon:
      return CMatrix::from_rows({{a, a * mi}, {a * mi, a}});
    case EncodingName::dephasing:
      return CMatrix::from_rows({{a, 0, 0, a * mi},  //
                                 {0, a, a * mi, 0},
                                 {0, a * mi, a, 0},
                                 {a * mi, 0, 0, a}});
    case EncodingName::rotation:
      return CMatrix::from_rows({{a, a * mi, 0, 0},  //
                                 {a * mi, a, 0, 0},
                                 {0, 0, a, -a * mi},
                                 {0, 0, -a * mi, a}});
    default:
      throw UnknownEncodingError("no published closed form for this encoding");
  }
}

FlipActionReport verify_flip_actions(const OperatorSet& set) {
  const LogicalEncoding& enc = set.encoding;
  struct Case {
    OpLabel op;
    const CVector* in;
    const char* in_name;
    const CVector* out;
    const char* out_name;
  };
  // U flips within each basis; C maps z_i -> x_i and x_i -> z_{1-i}.
  const Case cases[] = {
      {OpLabel::U, &enc.z0, "z0", &enc.z1, "z1"},
      {OpLabel::U, &enc.z1, "z1", &enc.z0, "z0"},
      {OpLabel::U, &enc.x0, "x0", &enc.x1, "x1"},
      {OpLabel::U, &enc.x1, "x1", &enc.x0, "x0"},
      {OpLabel::C, &enc.z0, "z0", &enc.x0, "x0"},
      {OpLabel::C, &enc.z1, "z1", &enc.x1, "x1"},
      {OpLabel::C, &enc.x0, "x0", &enc.z1, "z1"},
      {OpLabel::C, &enc.x1, "x1", &enc.z0, "z0"},
  };

  FlipActionReport report;
  report.all_pass = true;
  for (const Case& c : cases) {
    const CVector mapped = op(set, c.op) * *c.in;
    const cplx phase = inner(*c.out, mapped);
    double residual = 0.0;
    for (std::size_t k = 0; k < mapped.dim(); ++k)
      residual = std::max(residual, std::abs(mapped[k] - phase * (*c.out)[k]));
    const bool pass = std::abs(std::abs(phase) - 1.0) <= 1e-9 && residual <= 1e-9;
    report.actions.push_back({c.op, c.in_name, c.out_name, phase, residual, pass});
    report.all_pass = report.all_pass && pass;
  }
  return report;
}

}  // namespace qkdcd
