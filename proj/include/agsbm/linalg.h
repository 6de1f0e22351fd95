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

// Small dense linear algebra: conditioned determinants and a cyclic Jacobi
// eigensolver for symmetric matrices.

#ifndef AGSBM_LINALG_H_
#define AGSBM_LINALG_H_

#include <Eigen/Dense>

namespace agsbm {

// A determinant together with a conditioning verdict.  `negligible` is set
// when |value| < 1e-12 * (product of the row 2-norms); such determinants are
// treated as zero whenever they are used in a ratio.
struct Determinant {
  double value = 0.0;
  double scale = 0.0;  // product of row norms (1 for the empty matrix)
  bool negligible = true;
};

inline constexpr double kNegligibleDeterminant = 1e-12;

// LU with partial pivoting.  The 0x0 matrix has determinant 1.
Determinant ConditionedDeterminant(const Eigen::MatrixXd& a);

struct SymmetricEigen {
  Eigen::VectorXd values;   // unsorted, aligned with the columns below
  Eigen::MatrixXd vectors;  // orthonormal eigenvectors as columns
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
// `tolerance` times the Frobenius norm of `a` (or exactly zero).
SymmetricEigen JacobiEigen(const Eigen::MatrixXd& a, double tolerance = 1e-12,
                           int max_sweeps = 100);

}  // namespace agsbm

#endif  // AGSBM_LINALG_H_
