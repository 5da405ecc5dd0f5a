// Copyright 2026 The medol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEDOL_TOPOLOGY_HPP
#define MEDOL_TOPOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "medol/vec.hpp"

namespace medol {

/// Symmetric doubly stochastic communication matrix over n agents.
///
/// Invariants, enforced at construction: weights symmetric, entries
/// nonnegative, rows sum to 1 (within 1e-12), the graph induced by the
/// nonzero off-diagonal entries is connected, and rho — the second
/// largest singular value — is strictly below 1. Immutable once built;
/// safe to share across threads.
struct CommMatrix {
  int n = 0;
  std::vector<double> weights;  // row-major, n*n
  double rho = 0.0;

  double at(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
};

/// Circulant ring matrix: each agent averages uniformly (weight 1/m) over
/// its closed neighborhood of m agents — itself plus (m-1)/2 on each side.
/// m must be odd and at most n.
CommMatrix ring_matrix(int n, int m);

/// Uniform averaging matrix (all entries 1/n); rho = 0.
CommMatrix uniform_matrix(int n);

/// Samples an Erdos-Renyi graph G(n, p) from the seed and assigns
/// Metropolis weights 1/(1 + max(deg_i, deg_j)) on edges, with the
/// diagonal absorbing the remainder. Disconnected samples are retried
/// with seed+1 up to max_attempts times before a construction error.
CommMatrix erdos_renyi_matrix(int n, double p, std::uint64_t seed, int max_attempts = 100);

/// Second largest singular value of a symmetric matrix, via symmetric
/// eigendecomposition (singular values are the absolute eigenvalues).
/// Throws std::invalid_argument if weights is not symmetric.
double second_largest_singular_value(const std::vector<double>& weights, int n);

/// All eigenvalues of a symmetric matrix (row-major, n*n), sorted
/// descending. Cyclic Jacobi; deterministic for a given input.
std::vector<double> sym_eigenvalues(std::vector<double> a, int n);

/// Checks all CommMatrix invariants and returns the violated ones
/// (empty means valid). Tags: "symmetry", "nonnegative", "row-sum",
/// "connectivity", "rho<1".
std::vector<std::string> validate(const CommMatrix& m);

/// One synchronous gossip step: out[i] = sum_j weights[i][j] * in[j].
/// All inputs must share one dimension. Pure; the reduction order over
/// j is fixed (ascending), so results are deterministic.
std::vector<Vec> gossip(const CommMatrix& m, const std::vector<Vec>& vectors);

void gossip_into(const CommMatrix& m, const std::vector<Vec>& in, std::vector<Vec>& out);

/// Plain-text matrix format: first line n, then n rows of n reals.
/// Values are written with 17 significant digits so save/load
/// round-trips bit-exactly.
void save_matrix(const CommMatrix& m, std::ostream& out);
void save_matrix(const CommMatrix& m, const std::string& path);
CommMatrix load_matrix(std::istream& in);
CommMatrix load_matrix(const std::string& path);

}  // namespace medol

#endif  // MEDOL_TOPOLOGY_HPP
