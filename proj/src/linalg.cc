// Copyright 2026 The agsbm Authors.
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

#include "agsbm/linalg.h"

#include <cmath>

#include "agsbm/errors.h"

namespace agsbm {

Determinant ConditionedDeterminant(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ParameterError("determinant of non-square matrix");
  Determinant det;
  if (a.rows() == 0) {
    det.value = 1.0;
    det.scale = 1.0;
    det.negligible = false;
    return det;
  }
  det.scale = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) det.scale *= a.row(i).norm();
  det.value = Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
  det.negligible = !(std::abs(det.value) >= kNegligibleDeterminant * det.scale) ||
                   det.scale == 0.0;
  return det;
}

SymmetricEigen JacobiEigen(const Eigen::MatrixXd& a, double tolerance,
                           int max_sweeps) {
  if (a.rows() != a.cols()) throw ParameterError("eigensolver needs a square matrix");
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd m = a;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = a.norm();

  auto off_diagonal = [&]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen out;
  while (out.sweeps < max_sweeps) {
    const double off = off_diagonal();
    if (off == 0.0 || off <= tolerance * norm) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        // Rotation angle that annihilates m(p, q) (Golub & Van Loan 8.5.2).
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    ++out.sweeps;
  }
  out.values = m.diagonal();
  out.vectors = std::move(v);
  return out;
}

}  // namespace agsbm
