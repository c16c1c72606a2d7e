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

#include "qkdcd/discrimination.hpp"

#include <algorithm>
#include <cmath>

namespace qkdcd {

namespace {

struct P2 {
  double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist_origin_to_segment(const P2& a, const P2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(-(a.x * dx + a.y * dy) / len2, 0.0, 1.0);
  const double px = a.x + t * dx;
  const double py = a.y + t * dy;
  return std::hypot(px, py);
}

// Monotone-chain convex hull, counterclockwise; collinear points (cross
// below tolerance) are dropped from the boundary.
std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const std::size_t n = pts.size();
  std::vector<P2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

}  // namespace

double eigenvalue_hull_distance(const CMatrix& u) {
  const SpectralDecomposition sd = spectral_decompose(u);

  // Collapse numerically repeated eigenvalues to single hull points.
  std::vector<P2> pts;
  for (const cplx& lam : sd.eigenvalues) {
    bool seen = false;
    for (const P2& p : pts) {
      if (std::hypot(p.x - lam.real(), p.y - lam.imag()) <= 1e-9) {
        seen = true;
        break;
      }
    }
    if (!seen) pts.push_back({lam.real(), lam.imag()});
  }

  if (pts.size() == 1) return std::hypot(pts[0].x, pts[0].y);
  if (pts.size() == 2) return dist_origin_to_segment(pts[0], pts[1]);

  const std::vector<P2> hull = convex_hull(pts);
  if (hull.size() == 1) return std::hypot(hull[0].x, hull[0].y);
  if (hull.size() == 2) return dist_origin_to_segment(hull[0], hull[1]);

  const P2 origin{0.0, 0.0};
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, origin) < -1e-12) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;

  double best = std::hypot(hull[0].x, hull[0].y);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    best = std::min(best, dist_origin_to_segment(a, b));
  }
  return best;
}

double min_error_probability(const CMatrix& u1, const CMatrix& u2, double p1, double p2) {
  if (u1.rows() != u2.rows() || u1.cols() != u2.cols())
    throw DimensionMismatchError("operators have different shapes");
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw BadPriorsError("priors must be nonnegative and sum to 1");
  if (!u1.is_unitary(1e-10) || !u2.is_unitary(1e-10))
    throw NonUnitaryError("operators must be unitary");
  const double r = eigenvalue_hull_distance(u1.adjoint() * u2);
  const double disc = std::clamp(1.0 - 4.0 * p1 * p2 * r * r, 0.0, 1.0);
  return 0.5 * (1.0 - std::sqrt(disc));
}

std::vector<bool> unambiguous_set_check(const std::vector<CMatrix>& ops) {
  if (ops.size() < 2) throw DimensionMismatchError("need at least two operators");
  const std::size_t d = ops[0].rows();
  for (const CMatrix& m : ops) {
    if (m.rows() != d || m.cols() != d)
      throw DimensionMismatchError("operators have different shapes");
    if (!m.is_unitary(1e-10)) throw NonUnitaryError("operators must be unitary");
  }

  // Work on unit-normalized vectorizations.
  std::vector<CVector> vecs;
  vecs.reserve(ops.size());
  for (const CMatrix& m : ops) vecs.push_back(CVector(m.entries()).normalized());

  std::vector<bool> flags(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    // Orthonormal basis of the span of the other vectorizations.
    std::vector<CVector> basis;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      if (j == i) continue;
      CVector v = vecs[j];
      for (int pass = 0; pass < 2; ++pass)
        for (const CVector& u : basis) {
          const cplx c = inner(u, v);
          for (std::size_t r = 0; r < v.dim(); ++r) v[r] -= c * u[r];
        }
      const double n = v.norm();
      if (n > 1e-10) basis.push_back(v * cplx(1.0 / n, 0.0));
    }
    CVector resid = vecs[i];
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& u : basis) {
        const cplx c = inner(u, resid);
        for (std::size_t r = 0; r < resid.dim(); ++r) resid[r] -= c * u[r];
      }
    flags[i] = resid.norm() > 1e-8;
  }
  return flags;
}

DiscriminationReport analyze_operator_set(const OperatorSet& set, double p1, double p2) {
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw BadPriorsError("priors must be nonnegative and sum to 1");

  DiscriminationReport rep;
  rep.p1 = p1;
  rep.p2 = p2;

  const OpLabel labels[4] = {OpLabel::I, OpLabel::U, OpLabel::C, OpLabel::UC};
  for (int i = 0; i < 4; ++i)
    rep.eigenvalues[i] = spectral_decompose(op(set, labels[i])).eigenvalues;

  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const CMatrix rel = op(set, labels[i]).adjoint() * op(set, labels[j]);
      const double r = eigenvalue_hull_distance(rel);
      PairResult pr;
      pr.a = labels[i];
      pr.b = labels[j];
      pr.r = r;
      const double disc = std::clamp(1.0 - 4.0 * p1 * p2 * r * r, 0.0, 1.0);
      pr.p_error_min = 0.5 * (1.0 - std::sqrt(disc));
      pr.precisely_discriminable = r <= 1e-10;
      rep.pairs.push_back(pr);
    }
  }

  const auto flags = unambiguous_set_check({set.I, set.U, set.C, set.UC});
  for (int i = 0; i < 4; ++i) rep.unambiguous[i] = flags[i];

  rep.r_c = eigenvalue_hull_distance(set.C);
  rep.r_i_c = eigenvalue_hull_distance(set.I.adjoint() * set.C);
  rep.r_u_uc = eigenvalue_hull_distance(set.U.adjoint() * set.UC);
  rep.r_c_dag = eigenvalue_hull_distance(set.C.adjoint());
  rep.r_u_c = eigenvalue_hull_distance(set.U.adjoint() * set.C);
  rep.identities_hold = std::abs(rep.r_i_c - rep.r_c) <= 1e-10 &&
                        std::abs(rep.r_u_uc - rep.r_c) <= 1e-10 &&
                        std::abs(rep.r_u_c - rep.r_c_dag) <= 1e-10 &&
                        rep.r_c > 0.0 && rep.r_c_dag > 0.0;
  return rep;
}

}  // namespace qkdcd
