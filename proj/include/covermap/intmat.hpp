#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "covermap/checked.hpp"
#include "covermap/errors.hpp"

namespace covermap {

using BigInt = boost::multiprecision::cpp_int;
using Vec = std::vector<std::int64_t>;

// Dense row-major integer matrix. Entries are exact 64-bit; the heavy
// eliminations (determinant, kernel, inverse) run over arbitrary-precision
// integers internally and convert back with range checks.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) {
      throw Error(ErrorKind::kInvalidInput, "matrix dimensions must be non-negative");
    }
  }
  Mat(int rows, int cols, std::initializer_list<std::int64_t> entries);

  static Mat identity(int n);
  static Mat from_rows(const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::int64_t& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vec col(int j) const;
  Vec row(int i) const;
  void set_col(int j, const Vec& v);

  Mat transposed() const;

  bool operator==(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const Mat& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Exact matrix product with overflow checking.
Mat mat_mul(const Mat& a, const Mat& b);

// y = M x, exact.
Vec mat_vec(const Mat& m, const Vec& x);

// Exact determinant (fraction-free Bareiss over cpp_int).
BigInt det_exact(const Mat& m);

bool is_unimodular(const Mat& m);

// Basis of the full integer kernel {x : W x = 0}, returned as the columns of
// an n x (n - rank W) matrix. The basis spans the kernel as a direct summand
// of Z^n (it is produced by a unimodular column transformation), which is what
// orthogonal-complement splitting needs.
Mat kernel_basis(const Mat& w);

// Exact inverse of a matrix with determinant +-1.
Mat inverse_unimodular(const Mat& m);

// Glue several matrices side by side (equal row counts).
Mat hcat(const std::vector<Mat>& blocks);

// Block-diagonal assembly.
Mat block_diag(const std::vector<Mat>& blocks);

std::int64_t to_int64(const BigInt& v);

std::int64_t vec_gcd(const Vec& v);

}  // namespace covermap
