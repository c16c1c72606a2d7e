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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qkdcd/errors.hpp"
#include "qkdcd/rng.hpp"

namespace qkdcd {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// Dense complex vector; amplitudes of a pure state over qubit registers.
// Tensor-product index convention: the leftmost factor is the most
// significant index (|ab> -> index a*dim_b + b).
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : amp_(dim, cplx(0.0, 0.0)) {}
  explicit CVector(std::vector<cplx> amps) : amp_(std::move(amps)) {}

  static CVector basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amp_.size(); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  double norm() const;
  bool is_normalized(double tol = 1e-10) const;
  CVector normalized() const;

  CVector& operator+=(const CVector& o);
  CVector& operator-=(const CVector& o);
  CVector& operator*=(cplx s);
  friend CVector operator+(CVector a, const CVector& b) { return a += b; }
  friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
  friend CVector operator*(cplx s, CVector v) { return v *= s; }
  friend CVector operator*(CVector v, cplx s) { return v *= s; }

 private:
  std::vector<cplx> amp_;
};

// <a|b> with the conjugate on the first argument.
cplx inner(const CVector& a, const CVector& b);

CVector tensor(const CVector& a, const CVector& b);

// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, cplx(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  // |ket><bra|
  static CMatrix outer(const CVector& ket, const CVector& bra);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  const std::vector<cplx>& entries() const { return e_; }

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& o) const;
  CVector operator*(const CVector& v) const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix m) { return m *= s; }

  double max_abs_diff(const CMatrix& o) const;
  bool is_unitary(double tol = 1e-10) const;
  cplx trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> e_;
};

CMatrix tensor(const CMatrix& a, const CMatrix& b);

// (m tensor I_bystander) |v| for a state on system (x) bystander, without
// forming the product matrix.
CVector apply_left_factor(const CMatrix& m, const CVector& v, std::size_t bystander_dim);

// Eigensystem of a unitary matrix. Eigenvalues lie on the unit circle and
// are stored together with their phases in [0, 2*pi), sorted by phase.
// Eigenvectors form an orthonormal basis even in the degenerate case.
struct SpectralDecomposition {
  std::vector<cplx> eigenvalues;
  std::vector<double> phases;
  std::vector<CVector> eigenvectors;

  CMatrix reconstruct() const;
};

// Diagonalizes a unitary matrix (dim <= 16) by joint Jacobi diagonalization
// of its commuting Hermitian and anti-Hermitian parts.
SpectralDecomposition spectral_decompose(const CMatrix& u);

// Groups sorted phases into clusters of near-equal values (circular, so a
// cluster may wrap across 0/2*pi). Returns index groups into `phases`.
std::vector<std::vector<std::size_t>> cluster_phases(const std::vector<double>& phases,
                                                     double tol = 1e-8);

// Unitary square root that halves every eigenvalue phase from [0, 2*pi)
// into [0, pi). Degenerate eigenvalues are clustered before halving so the
// branch choice is applied once per eigenspace.
CMatrix principal_sqrt(const CMatrix& u);

// True when |<a|b>| is within tol of 1; both inputs must be normalized.
bool equal_up_to_global_phase(const CVector& a, const CVector& b, double tol = 1e-9);

// Orthonormal basis of the full dim-dimensional space whose leading vectors
// span the seed set. Completion candidates are the standard basis vectors in
// index order; near-dependent candidates are skipped.
std::vector<CVector> gram_schmidt(const std::vector<CVector>& seed, std::size_t dim);

// Haar-distributed unitary (Ginibre ensemble followed by QR with the
// positive-diagonal phase convention).
CMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace qkdcd
