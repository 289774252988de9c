// Copyright 2026 The blockade Authors
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

// Truncated bosonic Fock-space operators and composite-space utilities.
//
// Composite spaces use Kronecker ordering with the first factor as the
// slowest-varying index: |i, j> -> i * dim_b + j.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace blockade {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

class FockSpace {
 public:
  // dim = photon-number cutoff + 1; must be at least 2.
  explicit FockSpace(Index dim);

  Index dim() const { return dim_; }
  Index cutoff() const { return dim_ - 1; }

 private:
  Index dim_;
};

// Square complex matrix with finite entries.
class Operator {
 public:
  explicit Operator(Matrix m);

  static Operator identity(Index dim);
  static Operator zero(Index dim);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  bool is_hermitian(double tol = 1e-12) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix m_;
};

// Hermitian, unit-trace, positive semidefinite matrix (within the tolerances
// below). Construction validates; solvers symmetrize before constructing.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-8;

  explicit DensityMatrix(Matrix m);

  // Normalizes the vector.
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix fock(Index dim, Index n);
  // Coherent state truncated to `dim` levels and renormalized.
  static DensityMatrix coherent(Index dim, Complex alpha);
  // Hermitian part of `m` divided by its trace; still validated.
  static DensityMatrix normalized(const Matrix& m);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

Operator annihilation_op(const FockSpace& space);
Operator creation_op(const FockSpace& space);
Operator number_op(const FockSpace& space);

Operator tensor(const Operator& a, const Operator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

// exp(A) by scaling and squaring of a truncated Taylor series.
Matrix matrix_exponential(const Matrix& a);

// U = exp(theta (d^dag a - a^dag d)) on space_a (x) space_b, with d the first
// factor. Convention: U^dag d U = cos(theta) d + sin(theta) a and
// U^dag a U = -sin(theta) d + cos(theta) a. Requires equal dims.
Operator beam_splitter_unitary(const FockSpace& space_a, const FockSpace& space_b,
                               double theta);

// Reduced state of factor `keep` of a composite system with factor dims `dims`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Index> dims,
                            Index keep);
Matrix partial_trace(const Matrix& m, std::span<const Index> dims, Index keep);

Complex expectation(const DensityMatrix& rho, const Operator& op);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double min_eigenvalue(const Matrix& hermitian);

}  // namespace blockade
