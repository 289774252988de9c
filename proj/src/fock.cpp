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

#include "blockade/fock.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "blockade/errors.hpp"

namespace blockade {

FockSpace::FockSpace(Index dim) : dim_(dim) {
  if (dim < 2) throw ConfigError("FockSpace: dim must be >= 2, got " + std::to_string(dim));
}

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ConfigError("Operator: matrix must be square");
  if (!m_.allFinite()) throw ConfigError("Operator: non-finite entry");
}

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator& Operator::operator+=(const Operator& other) {
  if (other.dim() != dim()) throw ConfigError("Operator: dimension mismatch in +");
  m_ += other.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  if (other.dim() != dim()) throw ConfigError("Operator: dimension mismatch in -");
  m_ -= other.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw ConfigError("Operator: dimension mismatch in *");
  return Operator(a.m_ * b.m_);
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ConfigError("DensityMatrix: matrix must be square");
  if (!m_.allFinite()) throw ConfigError("DensityMatrix: non-finite entry");
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermiticityTol) {
    throw ConfigError("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ConfigError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const double lmin = min_eigenvalue(m_);
  if (lmin < -kPositivityTol) {
    throw ConfigError("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ConfigError("DensityMatrix::pure: zero vector");
  const Vector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::fock(Index dim, Index n) {
  if (n < 0 || n >= dim) throw ConfigError("DensityMatrix::fock: level outside space");
  Matrix m = Matrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::coherent(Index dim, Complex alpha) {
  Vector psi(dim);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (Index n = 0; n < dim; ++n) {
    psi(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return pure(psi);
}

DensityMatrix DensityMatrix::normalized(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw NumericalError("DensityMatrix::normalized: non-positive trace");
  h /= tr;
  return DensityMatrix(std::move(h));
}

Operator annihilation_op(const FockSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (Index n = 1; n < space.dim(); ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(m));
}

Operator creation_op(const FockSpace& space) { return annihilation_op(space).adjoint(); }

Operator number_op(const FockSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (Index n = 0; n < space.dim(); ++n) m(n, n) = static_cast<double>(n);
  return Operator(std::move(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

Matrix matrix_exponential(const Matrix& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  // ||scaled|| <= 0.5, so 30 terms are far past double precision.
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix term = result;
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Operator beam_splitter_unitary(const FockSpace& space_a, const FockSpace& space_b,
                               double theta) {
  if (space_a.dim() != space_b.dim()) {
    throw ConfigError("beam_splitter_unitary: mode dims must be equal");
  }
  const Operator d = tensor(annihilation_op(space_a), Operator::identity(space_b.dim()));
  const Operator a = tensor(Operator::identity(space_a.dim()), annihilation_op(space_b));
  const Operator generator = d.adjoint() * a - a.adjoint() * d;
  return Operator(matrix_exponential(theta * generator.matrix()));
}

Matrix partial_trace(const Matrix& m, std::span<const Index> dims, Index keep) {
  if (keep < 0 || keep >= static_cast<Index>(dims.size())) {
    throw ConfigError("partial_trace: kept factor index out of range");
  }
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  if (total != m.rows() || m.rows() != m.cols()) {
    throw ConfigError("partial_trace: factor dims do not match matrix dimension");
  }
  const Index kept = dims[keep];
  const Index pre = std::accumulate(dims.begin(), dims.begin() + keep, Index{1}, std::multiplies<>());
  const Index post = total / (pre * kept);

  Matrix out = Matrix::Zero(kept, kept);
  for (Index i = 0; i < kept; ++i) {
    for (Index j = 0; j < kept; ++j) {
      Complex acc = 0.0;
      for (Index p = 0; p < pre; ++p) {
        for (Index q = 0; q < post; ++q) {
          acc += m((p * kept + i) * post + q, (p * kept + j) * post + q);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Index> dims, Index keep) {
  Matrix reduced = partial_trace(rho.matrix(), dims, keep);
  reduced = 0.5 * (reduced + reduced.adjoint());
  return DensityMatrix(std::move(reduced));
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (rho.dim() != op.dim()) throw ConfigError("expectation: dimension mismatch");
  return (rho.matrix() * op.matrix()).trace();
}

double min_eigenvalue(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ConfigError("trace_distance: dimension mismatch");
  const Matrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace blockade
