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

#include "medol/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "medol/rng.hpp"

namespace medol {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kRowSumTol = 1e-12;

bool is_symmetric(const std::vector<double>& w, int n, double tol) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(w[static_cast<std::size_t>(i) * n + j] -
                   w[static_cast<std::size_t>(j) * n + i]) > tol)
        return false;
  return true;
}

bool is_connected(const std::vector<double>& w, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      if (j == i || seen[j]) continue;
      if (w[static_cast<std::size_t>(i) * n + j] != 0.0) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

CommMatrix finalize(int n, std::vector<double> weights, const char* what) {
  CommMatrix m;
  m.n = n;
  m.weights = std::move(weights);
  m.rho = second_largest_singular_value(m.weights, n);
  const auto violations = validate(m);
  if (!violations.empty()) {
    std::string msg = std::string(what) + ": invalid communication matrix:";
    for (const auto& v : violations) msg += " " + v;
    throw std::invalid_argument(msg);
  }
  return m;
}

}  // namespace

std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
  // Cyclic Jacobi sweeps; kills each off-diagonal pair in a fixed order,
  // so the result is deterministic for a given input.
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);

  double frob = off;
  for (int i = 0; i < n; ++i) frob += at(i, i) * at(i, i);
  const double stop = 1e-30 * std::max(frob, 1e-300);

  for (int sweep = 0; sweep < 100 && off > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
    off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

double second_largest_singular_value(const std::vector<double>& weights, int n) {
  if (n < 1 || weights.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("second_largest_singular_value: bad shape");
  if (!is_symmetric(weights, n, kSymTol))
    throw std::invalid_argument("second_largest_singular_value: matrix not symmetric");
  if (n == 1) return 0.0;
  std::vector<double> sv = sym_eigenvalues(weights, n);
  for (double& v : sv) v = std::abs(v);
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv[1];
}

CommMatrix ring_matrix(int n, int m) {
  if (n < 2) throw std::invalid_argument("ring_matrix: n must be at least 2");
  if (m % 2 == 0) throw std::invalid_argument("ring_matrix: m must be odd");
  if (m < 1 || m > n) throw std::invalid_argument("ring_matrix: need 1 <= m <= n");

  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  const int half = (m - 1) / 2;
  const double weight = 1.0 / static_cast<double>(m);
  for (int i = 0; i < n; ++i)
    for (int k = -half; k <= half; ++k) {
      const int j = ((i + k) % n + n) % n;
      w[static_cast<std::size_t>(i) * n + j] += weight;
    }
  return finalize(n, std::move(w), "ring_matrix");
}

CommMatrix uniform_matrix(int n) {
  if (n < 1) throw std::invalid_argument("uniform_matrix: n must be positive");
  std::vector<double> w(static_cast<std::size_t>(n) * n, 1.0 / static_cast<double>(n));
  return finalize(n, std::move(w), "uniform_matrix");
}

CommMatrix erdos_renyi_matrix(int n, double p, std::uint64_t seed, int max_attempts) {
  if (n < 2) throw std::invalid_argument("erdos_renyi_matrix: n must be at least 2");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("erdos_renyi_matrix: p must be in (0, 1]");
  if (max_attempts < 1)
    throw std::invalid_argument("erdos_renyi_matrix: max_attempts must be positive");

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < p) {
          adj[static_cast<std::size_t>(i) * n + j] = 1;
          adj[static_cast<std::size_t>(j) * n + i] = 1;
          ++deg[i];
          ++deg[j];
        }

    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i || !adj[static_cast<std::size_t>(i) * n + j]) continue;
        const double wij = 1.0 / (1.0 + static_cast<double>(std::max(deg[i], deg[j])));
        w[static_cast<std::size_t>(i) * n + j] = wij;
        row += wij;
      }
      w[static_cast<std::size_t>(i) * n + i] = 1.0 - row;
    }

    if (!is_connected(w, n)) continue;
    return finalize(n, std::move(w), "erdos_renyi_matrix");
  }
  throw std::runtime_error("erdos_renyi_matrix: graph disconnected after " +
                           std::to_string(max_attempts) + " attempts");
}

std::vector<std::string> validate(const CommMatrix& m) {
  std::vector<std::string> violations;
  const int n = m.n;
  if (n < 1 || m.weights.size() != static_cast<std::size_t>(n) * n) {
    violations.emplace_back("shape");
    return violations;
  }
  if (!is_symmetric(m.weights, n, kSymTol)) violations.emplace_back("symmetry");

  bool nonneg = true;
  bool rows_ok = true;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = m.at(i, j);
      if (w < 0.0) nonneg = false;
      row += w;
    }
    if (std::abs(row - 1.0) > kRowSumTol * n) rows_ok = false;
  }
  if (!nonneg) violations.emplace_back("nonnegative");
  if (!rows_ok) violations.emplace_back("row-sum");
  if (!is_connected(m.weights, n)) violations.emplace_back("connectivity");
  // 1e-9 matches the eigensolver's accuracy contract; a true rho of 1
  // (disconnected or periodic) lands within ulps of it.
  if (!(m.rho < 1.0 - 1e-9)) violations.emplace_back("rho<1");
  return violations;
}

void gossip_into(const CommMatrix& m, const std::vector<Vec>& in, std::vector<Vec>& out) {
  const int n = m.n;
  if (in.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("gossip: expected one vector per agent");
  const std::size_t d = in.empty() ? 0 : in.front().size();
  for (const Vec& v : in)
    if (v.size() != d) throw std::invalid_argument("gossip: dimension mismatch");

  out.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec& row = out[static_cast<std::size_t>(i)];
    row.assign(d, 0.0);
    for (int j = 0; j < n; ++j) {
      const double w = m.at(i, j);
      if (w != 0.0) axpy(w, in[static_cast<std::size_t>(j)], row);
    }
  }
}

std::vector<Vec> gossip(const CommMatrix& m, const std::vector<Vec>& vectors) {
  std::vector<Vec> out;
  gossip_into(m, vectors, out);
  return out;
}

void save_matrix(const CommMatrix& m, std::ostream& out) {
  out << m.n << "\n";
  char buf[40];
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
}

void save_matrix(const CommMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
  save_matrix(m, out);
}

CommMatrix load_matrix(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) throw std::runtime_error("load_matrix: bad agent count");
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  for (double& v : w)
    if (!(in >> v)) throw std::runtime_error("load_matrix: truncated matrix");
  return finalize(n, std::move(w), "load_matrix");
}

CommMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix: cannot open " + path);
  return load_matrix(in);
}

}  // namespace medol
