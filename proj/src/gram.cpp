#include "covermap/gram.hpp"

#include <algorithm>
#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

namespace covermap {

namespace {

using Rat = boost::multiprecision::cpp_rational;

// Exact signature of a symmetric matrix: symmetric Gaussian elimination over
// the rationals. A diagonal pivot splits off a one-dimensional summand; when
// every remaining diagonal entry is zero, a nonzero off-diagonal entry spans a
// hyperbolic plane with the corresponding index, contributing (1,1).
std::pair<int, int> exact_signature(const Mat& m) {
  int n = m.rows();
  std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[i][j] = Rat(m.at(i, j));
  }
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  int pos = 0, neg = 0;

  auto remove_index = [&](int idx) {
    active.erase(std::find(active.begin(), active.end(), idx));
  };

  while (!active.empty()) {
    int pivot = -1;
    for (int i : active) {
      if (b[i][i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot >= 0) {
      (b[pivot][pivot] > 0 ? pos : neg) += 1;
      Rat p = b[pivot][pivot];
      for (int i : active) {
        if (i == pivot) continue;
        for (int j : active) {
          if (j == pivot) continue;
          b[i][j] -= b[i][pivot] * b[pivot][j] / p;
        }
      }
      remove_index(pivot);
      continue;
    }
    // All active diagonal entries vanish; find an off-diagonal coupling.
    int pi = -1, pj = -1;
    for (std::size_t a = 0; a < active.size() && pi < 0; ++a) {
      for (std::size_t c = a + 1; c < active.size(); ++c) {
        if (b[active[a]][active[c]] != 0) {
          pi = active[a];
          pj = active[c];
          break;
        }
      }
    }
    if (pi < 0) {
      throw Error(ErrorKind::kInvalidInput, "degenerate form: nonzero radical");
    }
    Rat c = b[pi][pj];
    pos += 1;
    neg += 1;
    for (int i : active) {
      if (i == pi || i == pj) continue;
      for (int j : active) {
        if (j == pi || j == pj) continue;
        b[i][j] -= (b[i][pi] * b[pj][j] + b[i][pj] * b[pi][j]) / c;
      }
    }
    remove_index(pi);
    remove_index(pj);
  }
  return {pos, neg};
}

}  // namespace

GramForm GramForm::from_matrix(Mat entries, std::string basis_id) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorKind::kInvalidInput, "gram matrix must be square");
  }
  int n = entries.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (entries.at(i, j) != entries.at(j, i)) {
        throw Error(ErrorKind::kInvalidInput, "gram matrix must be symmetric");
      }
    }
  }
  BigInt det = det_exact(entries);
  if (n > 0 && det == 0) {
    throw Error(ErrorKind::kInvalidInput, "degenerate form rejected (determinant 0)");
  }
  GramForm f;
  f.entries_ = std::move(entries);
  f.basis_id_ = std::move(basis_id);
  f.inv_.rank = n;
  f.inv_.determinant = to_int64(det);
  auto [pos, neg] = n > 0 ? exact_signature(f.entries_) : std::pair<int, int>{0, 0};
  f.inv_.signature_pos = pos;
  f.inv_.signature_neg = neg;
  f.inv_.parity = Parity::kEven;
  for (int i = 0; i < n; ++i) {
    if (f.entries_.at(i, i) % 2 != 0) {
      f.inv_.parity = Parity::kOdd;
      break;
    }
  }
  return f;
}

GramForm GramForm::empty(std::string basis_id) {
  GramForm f;
  f.entries_ = Mat(0, 0);
  f.basis_id_ = std::move(basis_id);
  return f;
}

GramForm GramForm::negated() const {
  Mat neg(rank(), rank());
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) neg.at(i, j) = checked_neg(entries_.at(i, j));
  }
  return from_matrix(std::move(neg), basis_id_ + "-neg");
}

GramForm GramForm::with_basis_id(std::string basis_id) const {
  GramForm f = *this;
  f.basis_id_ = std::move(basis_id);
  return f;
}

bool verify_change(const GramForm& source, const BasisChange& change, const GramForm& target) {
  const Mat& u = change.matrix;
  if (u.rows() != source.rank() || u.cols() != target.rank()) return false;
  if (u.rows() == u.cols() && !is_unimodular(u)) return false;
  Mat lhs = mat_mul(mat_mul(u.transposed(), source.entries()), u);
  return lhs == target.entries();
}

std::int64_t evaluate(const GramForm& form, const Vec& a, const Vec& b) {
  if (static_cast<int>(a.size()) != form.rank() || static_cast<int>(b.size()) != form.rank()) {
    throw Error(ErrorKind::kInvalidInput, "class length does not match form rank");
  }
  std::int64_t acc = 0;
  for (int i = 0; i < form.rank(); ++i) {
    if (a[i] == 0) continue;
    std::int64_t rowsum = 0;
    for (int j = 0; j < form.rank(); ++j) {
      rowsum = checked_add(rowsum, checked_mul(form.entries().at(i, j), b[j]));
    }
    acc = checked_add(acc, checked_mul(a[i], rowsum));
  }
  return acc;
}

std::int64_t evaluate(const GramForm& form, const HomologyClass& a, const HomologyClass& b) {
  auto check_basis = [&](const HomologyClass& c) {
    if (!c.basis_id.empty() && !form.basis_id().empty() && c.basis_id != form.basis_id()) {
      throw Error(ErrorKind::kInvalidInput,
                  "basis mismatch: class in '" + c.basis_id + "', form in '" +
                      form.basis_id() + "'");
    }
  };
  check_basis(a);
  check_basis(b);
  return evaluate(form, a.coords, b.coords);
}

GramForm direct_sum(const GramForm& a, const GramForm& b) {
  Mat sum = block_diag({a.entries(), b.entries()});
  return GramForm::from_matrix(std::move(sum), a.basis_id() + "+" + b.basis_id());
}

std::vector<HomologyClass> enumerate_vectors(const GramForm& form, std::int64_t norm,
                                             int coord_bound) {
  if (coord_bound < 1) {
    throw Error(ErrorKind::kInvalidInput, "coord_bound must be >= 1");
  }
  const int n = form.rank();
  const Mat& a = form.entries();
  const std::int64_t bound = coord_bound;
  std::vector<HomologyClass> out;
  if (n == 0) return out;

  // Interval bounds for the undetermined tail x_k..x_{n-1}: the pure-tail
  // quadratic part lies in [tail_lo[k], tail_hi[k]] for any coordinates of
  // magnitude <= bound.
  std::vector<std::int64_t> tail_lo(n + 1, 0), tail_hi(n + 1, 0);
  for (int k = n - 1; k >= 0; --k) {
    std::int64_t lo = tail_lo[k + 1], hi = tail_hi[k + 1];
    std::int64_t diag = checked_mul(a.at(k, k), checked_mul(bound, bound));
    lo = checked_add(lo, std::min<std::int64_t>(0, diag));
    hi = checked_add(hi, std::max<std::int64_t>(0, diag));
    for (int j = k + 1; j < n; ++j) {
      std::int64_t cross =
          checked_mul(2, checked_mul(std::abs(a.at(k, j)), checked_mul(bound, bound)));
      lo = checked_sub(lo, cross);
      hi = checked_add(hi, cross);
    }
    tail_lo[k] = lo;
    tail_hi[k] = hi;
  }

  Vec x(n, 0);
  // pair_sum[j] = sum_{i < depth} a[i][j] * x[i], maintained incrementally.
  Vec pair_sum(n, 0);

  std::function<void(int, std::int64_t, bool)> descend = [&](int depth, std::int64_t partial,
                                                             bool all_zero) {
    if (depth == n) {
      if (!all_zero && partial == norm) out.push_back({x, form.basis_id()});
      return;
    }
    // Remaining value = 2*sum_j pair_sum[j]*x_j (j >= depth) + tail quadratic.
    std::int64_t lin = 0;
    for (int j = depth; j < n; ++j) {
      lin = checked_add(lin, checked_mul(2, checked_mul(std::abs(pair_sum[j]), bound)));
    }
    std::int64_t lo = checked_add(checked_sub(partial, lin), tail_lo[depth]);
    std::int64_t hi = checked_add(checked_add(partial, lin), tail_hi[depth]);
    if (norm < lo || norm > hi) return;

    std::int64_t from = all_zero ? 0 : -bound;
    for (std::int64_t v = from; v <= bound; ++v) {
      x[depth] = v;
      std::int64_t contrib =
          checked_mul(v, checked_add(checked_mul(2, pair_sum[depth]),
                                     checked_mul(a.at(depth, depth), v)));
      if (v != 0) {
        for (int j = depth + 1; j < n; ++j) {
          pair_sum[j] = checked_add(pair_sum[j], checked_mul(a.at(depth, j), v));
        }
      }
      descend(depth + 1, checked_add(partial, contrib), all_zero && v == 0);
      if (v != 0) {
        for (int j = depth + 1; j < n; ++j) {
          pair_sum[j] = checked_sub(pair_sum[j], checked_mul(a.at(depth, j), v));
        }
      }
    }
    x[depth] = 0;
  };
  descend(0, 0, true);

  std::sort(out.begin(), out.end(),
            [](const HomologyClass& l, const HomologyClass& r) { return l.coords < r.coords; });
  return out;
}

namespace {

struct BruteState {
  const GramForm* a;
  const Mat* b;
  int bound;
  std::vector<Vec> columns;
};

bool brute_extend(BruteState& st, int k,
                  const std::vector<std::vector<Vec>>& candidates_by_col) {
  int n = st.b->rows();
  if (k == n) {
    Mat u(n, n);
    for (int j = 0; j < n; ++j) u.set_col(j, st.columns[j]);
    return is_unimodular(u);
  }
  for (const Vec& cand : candidates_by_col[k]) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (evaluate(*st.a, st.columns[i], cand) != st.b->at(i, k)) ok = false;
    }
    if (!ok) continue;
    st.columns.push_back(cand);
    if (brute_extend(st, k + 1, candidates_by_col)) return true;
    st.columns.pop_back();
  }
  return false;
}

}  // namespace

CongruenceSearch congruent_brute(const GramForm& a, const GramForm& b, int coord_bound) {
  if (a.rank() != b.rank()) {
    return {CongruenceOutcome::kIncongruent, std::nullopt, "rank differs"};
  }
  if (a.invariants() != b.invariants()) {
    const auto& ia = a.invariants();
    const auto& ib = b.invariants();
    std::string detail;
    if (ia.signature_pos != ib.signature_pos || ia.signature_neg != ib.signature_neg) {
      detail = "signature differs";
    } else if (ia.parity != ib.parity) {
      detail = "parity differs";
    } else {
      detail = "determinant differs";
    }
    return {CongruenceOutcome::kIncongruent, std::nullopt, detail};
  }
  int n = a.rank();
  if (n == 0) {
    return {CongruenceOutcome::kFound,
            BasisChange{Mat(0, 0), a.basis_id(), b.basis_id()}, ""};
  }

  // Candidate columns: vectors of the right self-pairing. The first column is
  // sign-fixed (negating every column of U preserves U^T A U).
  std::vector<std::vector<Vec>> candidates(n);
  for (int k = 0; k < n; ++k) {
    auto reps = enumerate_vectors(a, b.entries().at(k, k), coord_bound);
    for (const auto& r : reps) {
      candidates[k].push_back(r.coords);
      if (k > 0) {
        Vec negated(r.coords.size());
        for (std::size_t i = 0; i < r.coords.size(); ++i) negated[i] = -r.coords[i];
        candidates[k].push_back(negated);
      }
    }
    std::sort(candidates[k].begin(), candidates[k].end());
  }

  BruteState st{&a, &b.entries(), coord_bound, {}};
  if (brute_extend(st, 0, candidates)) {
    Mat u(n, n);
    for (int j = 0; j < n; ++j) u.set_col(j, st.columns[j]);
    BasisChange change{u, a.basis_id(), b.basis_id()};
    if (!verify_change(a, change, b)) {
      throw Error(ErrorKind::kInternal, "brute congruence failed verification");
    }
    return {CongruenceOutcome::kFound, change, ""};
  }
  return {CongruenceOutcome::kNotFound, std::nullopt,
          "search exhausted at coord_bound " + std::to_string(coord_bound)};
}

}  // namespace covermap
