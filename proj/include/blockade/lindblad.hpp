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

// Lindblad master-equation machinery on vectorized density matrices.
//
// Vectorization is column-major: vec(A rho B) = (B^T kron A) vec(rho).

#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "blockade/errors.hpp"
#include "blockade/fock.hpp"
#include "blockade/ode.hpp"

namespace blockade {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Raised when a state has non-negligible weight in the top Fock level.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct CollapseChannel {
  Operator op;
  double rate = 0.0;
};

// Accumulates superoperator terms coeff * (rho -> A rho B).
class SuperoperatorBuilder {
 public:
  explicit SuperoperatorBuilder(Index dim) : dim_(dim) {}

  Index dim() const { return dim_; }

  void add_sandwich(const Matrix& left, const Matrix& right, Complex coeff);
  void add_left(const Matrix& left, Complex coeff);
  void add_right(const Matrix& right, Complex coeff);
  // -i [H, rho]
  void add_hamiltonian(const Operator& h);
  // rate * (L rho L^dag - {L^dag L, rho} / 2)
  void add_dissipator(const Operator& op, double rate);

  SparseMatrix build() const;

 private:
  Index dim_;
  std::vector<Eigen::Triplet<Complex>> triplets_;
};

class Liouvillian {
 public:
  // Throws ConfigError unless generator is dim^2 x dim^2.
  Liouvillian(Index dim, SparseMatrix generator);

  Index dim() const { return dim_; }
  const SparseMatrix& generator() const { return generator_; }

  Vector apply(const Vector& vec_rho) const { return generator_ * vec_rho; }
  Matrix apply(const Matrix& rho) const;

  // Induced 1-norm (largest absolute column sum).
  double norm() const;
  // max |(L^dag vec(I))_k|; zero for a trace-preserving generator.
  double trace_defect() const;

 private:
  Index dim_;
  SparseMatrix generator_;
};

Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Index dim);

// Generator of d rho/dt = -i[H, rho] + sum_k rate_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2).
// Throws ConfigError on dimension mismatch or negative rate.
Liouvillian build_liouvillian(const Operator& h, std::span<const CollapseChannel> channels);

enum class SteadyStateMethod {
  kDirect,     // sparse LU with one equation replaced by the trace constraint
  kPropagate,  // integrate from the ground state until the residual is small
};

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::kDirect;
  // Direct: ||L rho|| <= residual_tol * ||L||. Propagate: convergence criterion.
  double residual_tol = 1e-10;
  double max_time = 1e5;
  OdeOptions ode{};
};

// Throws NumericalError for a degenerate kernel or a non-converged solve.
DensityMatrix steady_state(const Liouvillian& l, const SteadyStateOptions& opt = {});

// ||L rho||_1 / ||L||_1.
double steady_state_residual(const Liouvillian& l, const DensityMatrix& rho);

// Propagates rho0 for duration t (adaptive RK, rtol 1e-9 / atol 1e-12 by default).
DensityMatrix evolve(const Liouvillian& l, const DensityMatrix& rho0, double t,
                     const OdeOptions& opt = {});
// Same for an arbitrary (not necessarily physical) operator, as used by the
// quantum regression theorem.
Matrix evolve(const Liouvillian& l, const Matrix& m0, double t, const OdeOptions& opt = {});

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

// Diagonal of rho in the Fock basis.
std::vector<double> fock_probabilities(const DensityMatrix& rho);

// <a^dag a^dag a a> / <a^dag a>^2 for the single mode of rho's space.
// Throws NumericalError on a vacuum state.
double g2_zero(const DensityMatrix& rho);
double g2_zero(const DensityMatrix& rho, const Operator& mode);

// Quantum regression: propagate a rho_ss a^dag under l and normalize
// <a^dag a>(tau) by <a^dag a>_ss^2. tau_grid must be non-negative and strictly
// increasing.
TimeSeries g2_tau(const Liouvillian& l, const DensityMatrix& rho_ss,
                  std::span<const double> tau_grid, const OdeOptions& opt = {});
TimeSeries g2_tau(const Liouvillian& l, const DensityMatrix& rho_ss, const Operator& mode,
                  std::span<const double> tau_grid, const OdeOptions& opt = {});

// Rate equations for Fock populations under linear (kappa_l) and two-photon
// (kappa_nl) loss; populations beyond the vector are zero.
std::vector<double> fock_rate_step(std::span<const double> p, double kappa_l, double kappa_nl);

// Throws TruncationError if the top Fock level of any factor carries more than
// `tol` population. `dims` lists the factor dims (a single entry for one mode).
void check_truncation(const DensityMatrix& rho, std::span<const Index> dims, double tol = 1e-9);

}  // namespace blockade
