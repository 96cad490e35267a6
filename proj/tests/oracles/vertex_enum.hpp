#pragma once

// Brute-force LP reference: enumerate every basic solution of
// {z >= 0, A z <= K} in exact arithmetic and keep the feasible ones.

#include "prodauction/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

using prodauction::Rational;
using RMatrix = std::vector<std::vector<Rational>>;

// Solves the square system M x = b; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(RMatrix M, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = b[r] / M[r][r];
  return x;
}

// All vertices of {z >= 0, A z <= K}. Rows of the full system are the ℓ
// constraints followed by -z_j <= 0; each m-subset of tight rows is tried.
inline std::vector<std::vector<Rational>> vertices(const RMatrix& A, const std::vector<Rational>& K,
                                                   std::size_t m) {
  RMatrix rows = A;
  std::vector<Rational> rhs = K;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> r(m, Rational(0));
    r[j] = -1;
    rows.push_back(r);
    rhs.push_back(0);
  }
  const std::size_t total = rows.size();
  std::vector<std::vector<Rational>> out;
  std::vector<std::size_t> pick(m);
  // Iterate over increasing index tuples.
  for (std::size_t a = 0; a < m; ++a) pick[a] = a;
  if (total < m) return out;
  for (;;) {
    RMatrix M;
    std::vector<Rational> b;
    for (std::size_t a : pick) {
      M.push_back(rows[a]);
      b.push_back(rhs[a]);
    }
    if (auto x = solve_square(M, b)) {
      bool ok = true;
      for (std::size_t r = 0; r < total && ok; ++r) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < m; ++j) lhs += rows[r][j] * (*x)[j];
        ok = lhs <= rhs[r];
      }
      if (ok) out.push_back(*x);
    }
    std::size_t a = m;
    while (a > 0 && pick[a - 1] == total - m + a - 1) --a;
    if (a == 0) break;
    ++pick[a - 1];
    for (std::size_t c = a; c < m; ++c) pick[c] = pick[c - 1] + 1;
  }
  return out;
}

// The region is bounded iff its recession cone {d >= 0, A d <= 0} is {0},
// i.e. the slice of the cone with sum(d) = 1 has no vertex.
inline bool bounded(const RMatrix& A, std::size_t m) {
  RMatrix rows = A;
  std::vector<Rational> rhs(A.size(), Rational(0));
  rows.push_back(std::vector<Rational>(m, Rational(1)));
  rhs.push_back(1);
  rows.push_back(std::vector<Rational>(m, Rational(-1)));
  rhs.push_back(-1);
  return vertices(rows, rhs, m).empty();
}

struct BruteForce {
  bool feasible = false;
  Rational best = 0;
};

inline BruteForce maximize(const RMatrix& A, const std::vector<Rational>& K, const std::vector<Rational>& c) {
  BruteForce out;
  for (const auto& v : vertices(A, K, c.size())) {
    Rational val = 0;
    for (std::size_t j = 0; j < c.size(); ++j) val += c[j] * v[j];
    if (!out.feasible || val > out.best) out.best = val;
    out.feasible = true;
  }
  return out;
}

}  // namespace oracle
