#include "covermap/lll.hpp"

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace covermap {

namespace {

using Rat = boost::multiprecision::cpp_rational;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt round_nearest(const Rat& x) {
  return floor_div(2 * numerator(x) + denominator(x), 2 * denominator(x));
}

struct Gso {
  std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
  std::vector<Rat> bstar;            // squared lengths of the GS vectors
};

Gso compute_gso(const std::vector<std::vector<BigInt>>& g, int upto) {
  int n = upto + 1;
  Gso out;
  out.mu.assign(n, std::vector<Rat>(n, 0));
  out.bstar.assign(n, 0);
  // r[i][j] = <b_i, b*_j>
  std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Rat v = Rat(g[i][j]);
      for (int k = 0; k < j; ++k) v -= out.mu[j][k] * r[i][k];
      r[i][j] = v;
      if (j < i) out.mu[i][j] = v / out.bstar[j];
    }
    out.bstar[i] = r[i][i];
  }
  return out;
}

}  // namespace

Mat lll_transform_definite(const Mat& gram) {
  const int n = gram.rows();
  if (n != gram.cols()) {
    throw Error(ErrorKind::kInvalidInput, "gram matrix must be square");
  }
  std::vector<std::vector<BigInt>> g(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g[i][j] = gram.at(i, j);
  }
  std::vector<std::vector<BigInt>> t(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) t[i][i] = 1;

  // basis op: b_k -= q * b_j
  auto reduce_pair = [&](int k, int j, const BigInt& q) {
    if (q == 0) return;
    for (int c = 0; c < n; ++c) g[k][c] -= q * g[j][c];
    for (int r = 0; r < n; ++r) g[r][k] -= q * g[r][j];
    for (int r = 0; r < n; ++r) t[r][k] -= q * t[r][j];
  };
  auto swap_pair = [&](int k) {
    for (int c = 0; c < n; ++c) std::swap(g[k][c], g[k - 1][c]);
    for (int r = 0; r < n; ++r) std::swap(g[r][k], g[r][k - 1]);
    for (int r = 0; r < n; ++r) std::swap(t[r][k], t[r][k - 1]);
  };

  const Rat delta(99, 100);
  int k = 1;
  while (k < n) {
    Gso gso = compute_gso(g, k);
    for (int j = k - 1; j >= 0; --j) {
      BigInt q = round_nearest(gso.mu[k][j]);
      if (q != 0) {
        reduce_pair(k, j, q);
        gso = compute_gso(g, k);
      }
    }
    if (gso.bstar[k] >= (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.bstar[k - 1]) {
      ++k;
    } else {
      swap_pair(k);
      k = k > 1 ? k - 1 : 1;
    }
  }

  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.at(i, j) = to_int64(t[i][j]);
  }
  return out;
}

}  // namespace covermap
