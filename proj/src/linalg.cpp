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

#include "qkdcd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qkdcd {

namespace {

constexpr std::size_t kMaxSpectralDim = 16;
constexpr double kJacobiOffTol = 1e-12;
constexpr std::size_t kJacobiMaxSweeps = 10000;

}  // namespace

// ---------------------------------------------------------------------------
// CVector

CVector CVector::basis_state(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = cplx(1.0, 0.0);
  return v;
}

double CVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

bool CVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

CVector CVector::normalized() const {
  CVector v = *this;
  const double n = norm();
  if (n > 0.0) {
    for (cplx& a : v.amp_) a /= n;
  }
  return v;
}

CVector& CVector::operator+=(const CVector& o) {
  if (dim() != o.dim()) throw DimensionMismatchError("vector sizes differ");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += o.amp_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& o) {
  if (dim() != o.dim()) throw DimensionMismatchError("vector sizes differ");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= o.amp_[i];
  return *this;
}

CVector& CVector::operator*=(cplx s) {
  for (cplx& a : amp_) a *= s;
  return *this;
}

cplx inner(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("vector sizes differ");
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

// ---------------------------------------------------------------------------
// CMatrix

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  CMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatchError("ragged row list");
    std::size_t j = 0;
    for (const cplx& x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

CMatrix CMatrix::outer(const CVector& ket, const CVector& bra) {
  CMatrix m(ket.dim(), bra.dim());
  for (std::size_t i = 0; i < ket.dim(); ++i)
    for (std::size_t j = 0; j < bra.dim(); ++j) m.at(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatchError("matrix product shape");
  CMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = at(i, k);
      if (a == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += a * o.at(k, j);
    }
  return m;
}

CVector CMatrix::operator*(const CVector& v) const {
  if (cols_ != v.dim()) throw DimensionMismatchError("matrix-vector shape");
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("matrix sum shape");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("matrix diff shape");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& x : e_) x *= s;
  return *this;
}

double CMatrix::max_abs_diff(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("matrix diff shape");
  double m = 0.0;
  for (std::size_t i = 0; i < e_.size(); ++i) m = std::max(m, std::abs(e_[i] - o.e_[i]));
  return m;
}

bool CMatrix::is_unitary(double tol) const {
  if (rows_ != cols_) return false;
  return (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
}

cplx CMatrix::trace() const {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += at(i, i);
  return s;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx x = a.at(i, j);
      if (x == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.at(i * b.rows() + k, j * b.cols() + l) = x * b.at(k, l);
    }
  return m;
}

CVector apply_left_factor(const CMatrix& m, const CVector& v, std::size_t bystander_dim) {
  if (m.cols() * bystander_dim != v.dim())
    throw DimensionMismatchError("joint state dimension mismatch");
  CVector out(m.rows() * bystander_dim);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx x = m.at(i, j);
      if (x == cplx(0.0, 0.0)) continue;
      for (std::size_t b = 0; b < bystander_dim; ++b)
        out[i * bystander_dim + b] += x * v[j * bystander_dim + b];
    }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

namespace {

// Cyclic complex Jacobi diagonalization of a Hermitian matrix stored
// row-major in `a`. Accumulates the rotations into the columns of `v`
// (so that original = V diag V^dagger on convergence).
void jacobi_hermitian(std::vector<cplx>& a, std::size_t n, std::vector<cplx>& v) {
  auto A = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * n + c]; };
  auto V = [&](std::size_t r, std::size_t c) -> cplx& { return v[r * n + c]; };

  auto off_mass = [&]() {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(A(r, c));
    return std::sqrt(s);
  };

  for (std::size_t sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_mass() <= kJacobiOffTol) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = A(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const cplx phase = apq / mag;  // apq = mag * phase
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J column p = (c, -s*conj(phase)), column q = (s, c*conj(phase)).
        const cplx jp = -s * std::conj(phase);
        const cplx jq = c * std::conj(phase);
        // Right update: B = A * J.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = A(k, p);
          const cplx akq = A(k, q);
          A(k, p) = c * akp + jp * akq;
          A(k, q) = s * akp + jq * akq;
        }
        // Left update: A' = J^dagger * B.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = A(p, k);
          const cplx aqk = A(q, k);
          A(p, k) = c * apk + std::conj(jp) * aqk;
          A(q, k) = s * apk + std::conj(jq) * aqk;
        }
        // Accumulate eigenvectors: V = V * J.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = V(k, p);
          const cplx vkq = V(k, q);
          V(k, p) = c * vkp + jp * vkq;
          V(k, q) = s * vkp + jq * vkq;
        }
      }
    }
  }
  if (off_mass() > kJacobiOffTol)
    throw NoConvergenceError("jacobi eigensolver did not converge");
}

std::vector<cplx> identity_flat(std::size_t n) {
  std::vector<cplx> v(n * n, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = cplx(1.0, 0.0);
  return v;
}

}  // namespace

SpectralDecomposition spectral_decompose(const CMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatchError("matrix not square");
  const std::size_t n = u.rows();
  if (n == 0 || n > kMaxSpectralDim) throw TooLargeError("dimension outside supported range");
  if (!u.is_unitary(1e-10)) throw NonUnitaryError("matrix is not unitary");

  // A unitary u commutes with its Hermitian part A = (u + u^dagger)/2 and
  // anti-Hermitian part; diagonalizing A first and then the "sine" part
  // B = (u - u^dagger)/(2i) inside each A-eigenspace yields a joint
  // orthonormal eigenbasis of u itself.
  const CMatrix ud = u.adjoint();
  std::vector<cplx> a(n * n), b(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const cplx x = u.at(r, c);
      const cplx y = ud.at(r, c);
      a[r * n + c] = 0.5 * (x + y);
      b[r * n + c] = (x - y) / cplx(0.0, 2.0);
    }

  std::vector<cplx> v = identity_flat(n);
  jacobi_hermitian(a, n, v);

  std::vector<double> cosv(n);
  for (std::size_t i = 0; i < n; ++i) cosv[i] = a[i * n + i].real();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return cosv[x] < cosv[y]; });

  std::vector<CVector> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    CVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v[r * n + order[i]];
    cols[i] = col;
  }
  std::vector<double> cs(n);
  for (std::size_t i = 0; i < n; ++i) cs[i] = cosv[order[i]];

  // Resolve A-degenerate subspaces with the commuting "sine" part.
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && cs[stop] - cs[stop - 1] <= 1e-8) ++stop;
    const std::size_t k = stop - start;
    if (k > 1) {
      std::vector<cplx> bc(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        // B * col_j, projected back onto the cluster columns.
        CVector bv(n);
        for (std::size_t r = 0; r < n; ++r) {
          cplx s(0.0, 0.0);
          for (std::size_t c = 0; c < n; ++c) s += b[r * n + c] * cols[start + i][c];
          bv[r] = s;
        }
        for (std::size_t j = 0; j < k; ++j) bc[j * k + i] = inner(cols[start + j], bv);
      }
      std::vector<cplx> w = identity_flat(k);
      jacobi_hermitian(bc, k, w);
      std::vector<CVector> rotated(k, CVector(n));
      for (std::size_t j = 0; j < k; ++j) {
        CVector nv(n);
        for (std::size_t i = 0; i < k; ++i) {
          const cplx wij = w[i * k + j];
          for (std::size_t r = 0; r < n; ++r) nv[r] += wij * cols[start + i][r];
        }
        rotated[j] = nv;
      }
      for (std::size_t j = 0; j < k; ++j) cols[start + j] = rotated[j];
    }
    start = stop;
  }

  SpectralDecomposition sd;
  sd.eigenvalues.resize(n);
  sd.phases.resize(n);
  sd.eigenvectors.resize(n);
  std::vector<double> phases(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx lam = inner(cols[i], u * cols[i]);
    double theta = std::atan2(lam.imag(), lam.real());
    if (theta < 0.0) theta += kTwoPi;
    if (kTwoPi - theta < 1e-12) theta = 0.0;
    phases[i] = theta;
  }
  std::vector<std::size_t> by_phase(n);
  std::iota(by_phase.begin(), by_phase.end(), 0);
  std::stable_sort(by_phase.begin(), by_phase.end(),
                   [&](std::size_t x, std::size_t y) { return phases[x] < phases[y]; });
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = phases[by_phase[i]];
    sd.phases[i] = theta;
    sd.eigenvalues[i] = cplx(std::cos(theta), std::sin(theta));
    sd.eigenvectors[i] = cols[by_phase[i]];
  }
  return sd;
}

CMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvectors.empty() ? 0 : eigenvectors[0].dim();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < eigenvectors.size(); ++i) {
    const CVector& v = eigenvectors[i];
    const cplx lam = eigenvalues[i];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.at(r, c) += lam * v[r] * std::conj(v[c]);
  }
  return m;
}

std::vector<std::vector<std::size_t>> cluster_phases(const std::vector<double>& phases,
                                                     double tol) {
  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return phases[x] < phases[y]; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    if (groups.empty() || phases[idx] - phases[groups.back().back()] > tol) {
      groups.push_back({idx});
    } else {
      groups.back().push_back(idx);
    }
  }
  // The phase axis is circular: a cluster may straddle the 0/2*pi cut.
  if (groups.size() > 1) {
    const double lo = phases[groups.front().front()];
    const double hi = phases[groups.back().back()];
    if (kTwoPi - hi + lo <= tol) {
      for (std::size_t idx : groups.back()) groups.front().push_back(idx);
      groups.pop_back();
    }
  }
  return groups;
}

CMatrix principal_sqrt(const CMatrix& u) {
  const SpectralDecomposition sd = spectral_decompose(u);
  const std::size_t n = u.rows();
  CMatrix root(n, n);
  for (const auto& group : cluster_phases(sd.phases)) {
    // Representative phase via circular mean, snapped to 0 when the cluster
    // sits on the branch cut, then halved into [0, pi).
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t idx : group) {
      sx += std::cos(sd.phases[idx]);
      sy += std::sin(sd.phases[idx]);
    }
    double rep = std::atan2(sy, sx);
    if (rep < 0.0) rep += kTwoPi;
    if (rep < 1e-8 || kTwoPi - rep < 1e-8) rep = 0.0;
    const cplx lam_root(std::cos(rep / 2.0), std::sin(rep / 2.0));
    for (std::size_t idx : group) {
      const CVector& v = sd.eigenvectors[idx];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) root.at(r, c) += lam_root * v[r] * std::conj(v[c]);
    }
  }
  return root;
}

bool equal_up_to_global_phase(const CVector& a, const CVector& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("vector sizes differ");
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

std::vector<CVector> gram_schmidt(const std::vector<CVector>& seed, std::size_t dim) {
  std::vector<CVector> basis;
  basis.reserve(dim);

  // Two orthogonalization passes keep the basis orthonormal to machine
  // precision even for nearly dependent inputs.
  auto try_add = [&](CVector v, bool from_seed) {
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector& u : basis) {
        const cplx c = inner(u, v);
        for (std::size_t r = 0; r < v.dim(); ++r) v[r] -= c * u[r];
      }
    }
    const double n = v.norm();
    if (n < 1e-8 * scale) {
      if (from_seed) throw DependentSeedError("seed vectors are linearly dependent");
      return;
    }
    basis.push_back(v * cplx(1.0 / n, 0.0));
  };

  for (const CVector& v : seed) {
    if (v.dim() != dim) throw DimensionMismatchError("seed vector has wrong dimension");
    try_add(v, true);
  }
  for (std::size_t k = 0; k < dim && basis.size() < dim; ++k)
    try_add(CVector::basis_state(dim, k), false);
  return basis;
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
  const double inv_sqrt2 = 0.70710678118654752440084436210485;
  std::vector<CVector> cols(dim, CVector(dim));
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r)
      cols[c][r] = cplx(rng.gaussian() * inv_sqrt2, rng.gaussian() * inv_sqrt2);
  // Gram-Schmidt QR; plain normalization leaves R's diagonal positive, which
  // is exactly the phase convention that makes the result Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        const cplx x = inner(cols[p], cols[c]);
        for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= x * cols[p][r];
      }
    }
    const double n = cols[c].norm();
    for (std::size_t r = 0; r < dim; ++r) cols[c][r] /= n;
  }
  CMatrix q(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) q.at(r, c) = cols[c][r];
  return q;
}

}  // namespace qkdcd
