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

#include "blockade/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseLU>

namespace blockade {
namespace {

struct Entry {
  Index row;
  Index col;
  Complex value;
};

std::vector<Entry> nonzeros(const Matrix& m) {
  std::vector<Entry> out;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex{0.0, 0.0}) out.push_back({i, j, m(i, j)});
    }
  }
  return out;
}

}  // namespace

void SuperoperatorBuilder::add_sandwich(const Matrix& left, const Matrix& right, Complex coeff) {
  if (left.rows() != dim_ || left.cols() != dim_ || right.rows() != dim_ ||
      right.cols() != dim_) {
    throw ConfigError("SuperoperatorBuilder: operator dimension mismatch");
  }
  const auto a = nonzeros(left);
  const auto b = nonzeros(right);
  triplets_.reserve(triplets_.size() + a.size() * b.size());
  // (B^T kron A)(i*n + k, j*n + l) = B(j, i) A(k, l)
  for (const Entry& be : b) {
    for (const Entry& ae : a) {
      triplets_.emplace_back(be.col * dim_ + ae.row, be.row * dim_ + ae.col,
                             coeff * be.value * ae.value);
    }
  }
}

void SuperoperatorBuilder::add_left(const Matrix& left, Complex coeff) {
  add_sandwich(left, Matrix::Identity(dim_, dim_), coeff);
}

void SuperoperatorBuilder::add_right(const Matrix& right, Complex coeff) {
  add_sandwich(Matrix::Identity(dim_, dim_), right, coeff);
}

void SuperoperatorBuilder::add_hamiltonian(const Operator& h) {
  add_left(h.matrix(), -kI);
  add_right(h.matrix(), kI);
}

void SuperoperatorBuilder::add_dissipator(const Operator& op, double rate) {
  if (rate < 0.0) throw ConfigError("add_dissipator: negative rate");
  if (rate == 0.0) return;
  const Matrix& l = op.matrix();
  const Matrix ldl = l.adjoint() * l;
  add_sandwich(l, l.adjoint(), rate);
  add_left(ldl, -0.5 * rate);
  add_right(ldl, -0.5 * rate);
}

SparseMatrix SuperoperatorBuilder::build() const {
  SparseMatrix out(dim_ * dim_, dim_ * dim_);
  out.setFromTriplets(triplets_.begin(), triplets_.end());
  out.prune(Complex{0.0, 0.0});
  out.makeCompressed();
  return out;
}

Liouvillian::Liouvillian(Index dim, SparseMatrix generator)
    : dim_(dim), generator_(std::move(generator)) {
  if (dim < 1 || generator_.rows() != dim * dim || generator_.cols() != dim * dim) {
    throw ConfigError("Liouvillian: generator must be dim^2 x dim^2");
  }
  generator_.makeCompressed();
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  return unvectorize(generator_ * vectorize(rho), dim_);
}

double Liouvillian::norm() const {
  double best = 0.0;
  for (Index k = 0; k < generator_.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(generator_, k); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

double Liouvillian::trace_defect() const {
  // Column sums over the diagonal rows i*dim + i.
  double worst = 0.0;
  for (Index k = 0; k < generator_.outerSize(); ++k) {
    Complex acc = 0.0;
    for (SparseMatrix::InnerIterator it(generator_, k); it; ++it) {
      if (it.row() % (dim_ + 1) == 0) acc += it.value();
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

Vector vectorize(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw ConfigError("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Liouvillian build_liouvillian(const Operator& h, std::span<const CollapseChannel> channels) {
  SuperoperatorBuilder builder(h.dim());
  builder.add_hamiltonian(h);
  for (const CollapseChannel& c : channels) {
    if (c.op.dim() != h.dim()) throw ConfigError("build_liouvillian: channel dimension mismatch");
    if (c.rate < 0.0) throw ConfigError("build_liouvillian: negative channel rate");
    builder.add_dissipator(c.op, c.rate);
  }
  return Liouvillian(h.dim(), builder.build());
}

double steady_state_residual(const Liouvillian& l, const DensityMatrix& rho) {
  const Vector r = l.apply(vectorize(rho.matrix()));
  const double norm = l.norm();
  return norm == 0.0 ? r.cwiseAbs().sum() : r.cwiseAbs().sum() / norm;
}

namespace {

DensityMatrix solve_direct(const Liouvillian& l) {
  const Index n = l.dim();
  const Index size = n * n;
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(l.generator().nonZeros() + n));
  for (Index k = 0; k < l.generator().outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(l.generator(), k); it; ++it) {
      if (it.row() != 0) triplets.emplace_back(it.row(), it.col(), it.value());
    }
  }
  // Equation 0 (d rho_00 / dt) is implied by trace preservation; replace it by Tr rho = 1.
  for (Index i = 0; i < n; ++i) triplets.emplace_back(0, i * n + i, 1.0);
  SparseMatrix a(size, size);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("steady_state: singular constrained system (degenerate kernel): " +
                         lu.lastErrorMessage());
  }
  Vector b = Vector::Zero(size);
  b(0) = 1.0;
  const Vector x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw NumericalError("steady_state: linear solve failed");
  }
  try {
    return DensityMatrix::normalized(unvectorize(x, n));
  } catch (const ConfigError& e) {
    throw NumericalError(std::string("steady_state: solution is not a valid state "
                                     "(degenerate kernel?): ") +
                         e.what());
  }
}

DensityMatrix solve_by_propagation(const Liouvillian& l, const SteadyStateOptions& opt) {
  const Index n = l.dim();
  Matrix rho = Matrix::Zero(n, n);
  rho(0, 0) = 1.0;
  Vector y = vectorize(rho);
  const double norm = l.norm();
  auto rhs = [&](const Vector& v, Vector& dv) { dv.noalias() = l.generator() * v; };

  double t = 0.0;
  double chunk = 1.0;
  while (t < opt.max_time) {
    integrate_dopri5(rhs, y, t, t + chunk, opt.ode);
    t += chunk;
    const double res = (l.generator() * y).cwiseAbs().sum() / (norm == 0.0 ? 1.0 : norm);
    if (res <= opt.residual_tol) return DensityMatrix::normalized(unvectorize(y, n));
    chunk = std::min(2.0 * chunk, 32.0);
  }
  throw NumericalError("steady_state: propagation did not converge within max_time");
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& l, const SteadyStateOptions& opt) {
  DensityMatrix rho = opt.method == SteadyStateMethod::kDirect ? solve_direct(l)
                                                               : solve_by_propagation(l, opt);
  const double res = steady_state_residual(l, rho);
  if (!(res <= opt.residual_tol)) {
    throw NumericalError("steady_state: residual " + std::to_string(res) +
                         " exceeds tolerance");
  }
  return rho;
}

Matrix evolve(const Liouvillian& l, const Matrix& m0, double t, const OdeOptions& opt) {
  if (m0.rows() != l.dim() || m0.cols() != l.dim()) throw ConfigError("evolve: dimension mismatch");
  if (t < 0.0) throw ConfigError("evolve: negative duration");
  Vector y = vectorize(m0);
  auto rhs = [&](const Vector& v, Vector& dv) { dv.noalias() = l.generator() * v; };
  integrate_dopri5(rhs, y, 0.0, t, opt);
  return unvectorize(y, l.dim());
}

DensityMatrix evolve(const Liouvillian& l, const DensityMatrix& rho0, double t,
                     const OdeOptions& opt) {
  if (t == 0.0) return rho0;
  const Matrix m = evolve(l, rho0.matrix(), t, opt);
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

std::vector<double> fock_probabilities(const DensityMatrix& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.dim()));
  for (Index n = 0; n < rho.dim(); ++n) p[static_cast<std::size_t>(n)] = rho(n, n).real();
  return p;
}

double g2_zero(const DensityMatrix& rho, const Operator& mode) {
  const Matrix& a = mode.matrix();
  const Matrix n_op = a.adjoint() * a;
  const double n = (rho.matrix() * n_op).trace().real();
  if (!(n > 1e-15)) throw NumericalError("g2_zero: vacuum state, g2 undefined");
  const double n2 = (rho.matrix() * (a.adjoint() * n_op * a)).trace().real();
  return n2 / (n * n);
}

double g2_zero(const DensityMatrix& rho) {
  return g2_zero(rho, annihilation_op(FockSpace(rho.dim())));
}

TimeSeries g2_tau(const Liouvillian& l, const DensityMatrix& rho_ss, const Operator& mode,
                  std::span<const double> tau_grid, const OdeOptions& opt) {
  if (rho_ss.dim() != l.dim() || mode.dim() != l.dim()) {
    throw ConfigError("g2_tau: dimension mismatch");
  }
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (tau_grid[i] < 0.0 || (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
      throw ConfigError("g2_tau: tau grid must be non-negative and strictly increasing");
    }
  }
  const Matrix& a = mode.matrix();
  const Matrix n_op = a.adjoint() * a;
  const double n_ss = (rho_ss.matrix() * n_op).trace().real();
  if (!(n_ss > 1e-15)) throw NumericalError("g2_tau: vacuum steady state, g2 undefined");

  TimeSeries out;
  Matrix conditioned = a * rho_ss.matrix() * a.adjoint();
  double t = 0.0;
  for (double tau : tau_grid) {
    conditioned = evolve(l, conditioned, tau - t, opt);
    t = tau;
    out.times.push_back(tau);
    out.values.push_back((conditioned * n_op).trace().real() / (n_ss * n_ss));
  }
  return out;
}

TimeSeries g2_tau(const Liouvillian& l, const DensityMatrix& rho_ss,
                  std::span<const double> tau_grid, const OdeOptions& opt) {
  return g2_tau(l, rho_ss, annihilation_op(FockSpace(rho_ss.dim())), tau_grid, opt);
}

std::vector<double> fock_rate_step(std::span<const double> p, double kappa_l, double kappa_nl) {
  const std::size_t dim = p.size();
  auto at = [&](std::size_t n) { return n < dim ? p[n] : 0.0; };
  std::vector<double> dp(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    dp[n] = kappa_l * ((nn + 1.0) * at(n + 1) - nn * p[n]) +
            kappa_nl * ((nn + 2.0) * (nn + 1.0) * at(n + 2) - nn * (nn - 1.0) * p[n]);
  }
  return dp;
}

void check_truncation(const DensityMatrix& rho, std::span<const Index> dims, double tol) {
  Index total = 1;
  for (Index d : dims) total *= d;
  if (total != rho.dim()) throw ConfigError("check_truncation: dims do not match state");
  for (std::size_t k = 0; k < dims.size(); ++k) {
    Index stride = 1;
    for (std::size_t j = k + 1; j < dims.size(); ++j) stride *= dims[j];
    double top = 0.0;
    for (Index i = 0; i < total; ++i) {
      if ((i / stride) % dims[k] == dims[k] - 1) top += rho(i, i).real();
    }
    if (top > tol) {
      throw TruncationError("Fock truncation inadequate: factor " + std::to_string(k) +
                            " has top-level population " + std::to_string(top));
    }
  }
}

}  // namespace blockade
