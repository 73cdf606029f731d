#include "covermap/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace covermap {

namespace {

using BigMat = std::vector<std::vector<BigInt>>;

BigMat to_big(const Mat& m) {
  BigMat out(m.rows(), std::vector<BigInt>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  }
  return out;
}

}  // namespace

Mat::Mat(int rows, int cols, std::initializer_list<std::int64_t> entries) : Mat(rows, cols) {
  if (static_cast<std::size_t>(rows) * cols != entries.size()) {
    throw Error(ErrorKind::kInvalidInput, "initializer size does not match dimensions");
  }
  std::copy(entries.begin(), entries.end(), data_.begin());
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) {
      throw Error(ErrorKind::kInvalidInput, "ragged rows");
    }
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  if (static_cast<int>(v.size()) != rows_) {
    throw Error(ErrorKind::kInvalidInput, "column length mismatch");
  }
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kInvalidInput, "matrix product dimension mismatch");
  }
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      std::int64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        c.at(i, j) = checked_add(c.at(i, j), checked_mul(aik, b.at(k, j)));
      }
    }
  }
  return c;
}

Vec mat_vec(const Mat& m, const Vec& x) {
  if (m.cols() != static_cast<int>(x.size())) {
    throw Error(ErrorKind::kInvalidInput, "matrix-vector dimension mismatch");
  }
  Vec y(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      y[i] = checked_add(y[i], checked_mul(m.at(i, j), x[j]));
    }
  }
  return y;
}

BigInt det_exact(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidInput, "determinant of non-square matrix");
  }
  int n = m.rows();
  if (n == 0) return 1;
  BigMat a = to_big(m);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

bool is_unimodular(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  BigInt d = det_exact(m);
  return d == 1 || d == -1;
}

Mat kernel_basis(const Mat& w) {
  int k = w.rows();
  int n = w.cols();
  BigMat h = to_big(w);
  // u tracks the column operations: columns of u are a Z-basis of Z^n, with
  // w * u = h throughout.
  BigMat u(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < k; ++i) std::swap(h[i][a], h[i][b]);
    for (int i = 0; i < n; ++i) std::swap(u[i][a], u[i][b]);
  };
  auto addmul_col = [&](int dst, int src, const BigInt& q) {
    // col dst -= q * col src
    for (int i = 0; i < k; ++i) h[i][dst] -= q * h[i][src];
    for (int i = 0; i < n; ++i) u[i][dst] -= q * u[i][src];
  };
  auto negate_col = [&](int c) {
    for (int i = 0; i < k; ++i) h[i][c] = -h[i][c];
    for (int i = 0; i < n; ++i) u[i][c] = -u[i][c];
  };

  int col = 0;
  for (int row = 0; row < k && col < n; ++row) {
    // Euclidean sweep: clear row entries right of `col`.
    while (true) {
      int nz = -1;
      for (int c = col; c < n; ++c) {
        if (h[row][c] != 0 && (nz < 0 || abs(h[row][c]) < abs(h[row][nz]))) nz = c;
      }
      if (nz < 0) break;  // row is zero from col onward
      swap_cols(col, nz);
      if (h[row][col] < 0) negate_col(col);
      bool cleared = true;
      for (int c = col + 1; c < n; ++c) {
        if (h[row][c] == 0) continue;
        BigInt q = h[row][c] / h[row][col];
        addmul_col(c, col, q);
        if (h[row][c] != 0) cleared = false;
      }
      if (cleared) {
        ++col;
        break;
      }
    }
  }

  Mat kernel(n, n - col);
  for (int j = col; j < n; ++j) {
    for (int i = 0; i < n; ++i) kernel.at(i, j - col) = to_int64(u[i][j]);
  }
  return kernel;
}

Mat inverse_unimodular(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidInput, "inverse of non-square matrix");
  }
  int n = m.rows();
  BigMat a = to_big(m);
  BigMat inv(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  // Fraction-free is unnecessary here: entries stay integral at the end
  // because |det| = 1; eliminate over rationals represented as cpp_int pairs
  // would be overkill, so run integer-preserving Gauss-Bareiss and divide out.
  // Simpler: Gauss-Jordan over cpp_rational.
  using Rat = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Rat>> r(n, std::vector<Rat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r[i][j] = Rat(a[i][j]);
    r[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (r[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorKind::kInvalidInput, "singular matrix");
    std::swap(r[c], r[pivot]);
    Rat p = r[c][c];
    for (int j = 0; j < 2 * n; ++j) r[c][j] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == c || r[i][c] == 0) continue;
      Rat f = r[i][c];
      for (int j = 0; j < 2 * n; ++j) r[i][j] -= f * r[c][j];
    }
  }
  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rat v = r[i][n + j];
      if (denominator(v) != 1) {
        throw Error(ErrorKind::kInvalidInput, "matrix is not unimodular");
      }
      out.at(i, j) = to_int64(numerator(v));
    }
  }
  return out;
}

Mat hcat(const std::vector<Mat>& blocks) {
  if (blocks.empty()) return Mat();
  int rows = blocks[0].rows();
  int cols = 0;
  for (const Mat& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorKind::kInvalidInput, "hcat row mismatch");
    cols += b.cols();
  }
  Mat out(rows, cols);
  int off = 0;
  for (const Mat& b : blocks) {
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < b.cols(); ++j) out.at(i, off + j) = b.at(i, j);
    }
    off += b.cols();
  }
  return out;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  int rows = 0, cols = 0;
  for (const Mat& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Mat out(rows, cols);
  int ro = 0, co = 0;
  for (const Mat& b : blocks) {
    for (int i = 0; i < b.rows(); ++i) {
      for (int j = 0; j < b.cols(); ++j) out.at(ro + i, co + j) = b.at(i, j);
    }
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  static const BigInt kMin = std::numeric_limits<std::int64_t>::min();
  static const BigInt kMax = std::numeric_limits<std::int64_t>::max();
  if (v < kMin || v > kMax) {
    throw Error(ErrorKind::kOverflow, "exact value exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t vec_gcd(const Vec& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x);
  return g;
}

}  // namespace covermap
