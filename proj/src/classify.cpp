#include "covermap/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "covermap/e8.hpp"
#include "covermap/lll.hpp"

namespace covermap {

namespace {

constexpr const char* kCanonicalBasis = "canonical";

// Candidates the escalating searches hand back: coordinate vectors in the
// basis of the form they were searched in, lexicographic order.
using Candidates = std::vector<Vec>;

Mat column(const Vec& v) {
  Mat c(static_cast<int>(v.size()), 1);
  c.set_col(0, v);
  return c;
}

// Vectors of any of the requested self-pairings within the escalation
// schedule. For definite forms the search runs in an LLL-reduced basis first,
// which keeps the needed coordinate bounds small regardless of how the input
// basis was scrambled. Returns the candidates found at the first bound that
// yields any; empty means the ceiling was exhausted.
Candidates escalating_vectors(const GramForm& form, const std::vector<std::int64_t>& norms,
                              const SearchLimits& limits) {
  if (form.rank() == 0) return {};
  GramForm search = form;
  std::optional<Mat> back;  // reduced coords -> form coords
  if (form.definite()) {
    Mat gram = form.entries();
    if (form.invariants().signature_neg > 0) gram = form.negated().entries();
    Mat t = lll_transform_definite(gram);
    back = t;
    search = GramForm::from_matrix(mat_mul(mat_mul(t.transposed(), form.entries()), t),
                                   form.basis_id() + "-red");
  }
  int bound = limits.initial_bound;
  while (true) {
    Candidates found;
    for (std::int64_t norm : norms) {
      for (const auto& h : enumerate_vectors(search, norm, bound)) {
        Vec v = back ? mat_vec(*back, h.coords) : h.coords;
        // Normalize the antipodal representative in form coordinates.
        for (std::int64_t x : v) {
          if (x != 0) {
            if (x < 0) {
              for (auto& y : v) y = checked_neg(y);
            }
            break;
          }
        }
        found.push_back(std::move(v));
      }
    }
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end()), found.end());
      return found;
    }
    if (bound >= limits.ceiling) return {};
    bound = std::min(bound * 2, limits.ceiling);
  }
}

// Complement of the unimodular sublattice spanned by the columns of c inside
// the lattice carrying `gram`.
struct Split {
  Mat complement_basis;  // gram-coords, columns
  Mat complement_gram;
};

Split split_off(const Mat& gram, const Mat& c) {
  Mat constraints = mat_mul(c.transposed(), gram);
  Mat kernel = kernel_basis(constraints);
  Mat full = hcat({c, kernel});
  if (full.rows() != full.cols() || !is_unimodular(full)) {
    throw Error(ErrorKind::kInternal, "orthogonal splitting lost unimodularity");
  }
  Mat kg = mat_mul(mat_mul(kernel.transposed(), gram), kernel);
  return {kernel, kg};
}

bool gram_is_even(const Mat& g) {
  for (int i = 0; i < g.rows(); ++i) {
    if (g.at(i, i) % 2 != 0) return false;
  }
  return true;
}

std::int64_t quad(const Mat& gram, const Vec& v) {
  std::int64_t acc = 0;
  for (int i = 0; i < gram.rows(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < gram.cols(); ++j) {
      acc = checked_add(acc, checked_mul(v[i], checked_mul(gram.at(i, j), v[j])));
    }
  }
  return acc;
}

// Iterated splitting of +-1 vectors. Greedy splitting can strand an even
// complement (e.g. a unit vector inside diag(1,...,1,-1) whose complement is
// even); candidates whose complement stays odd (or empty) are preferred, and
// if the remainder still comes out even the most recent unit is merged back
// in and a unit mixing the two parts is extracted instead. Odd indefinite
// unimodular forms are diagonalizable, so for them this only fails if the
// enumeration ceiling is hit; for definite forms a genuine obstruction
// (a non-diagonalizable form) also ends here, reported as inconclusive.
struct UnitSplitting {
  std::vector<int> signs;          // +-1 per split, in split order
  std::vector<Vec> columns;        // matching columns, original coords
};

UnitSplitting split_units(const GramForm& form, const SearchLimits& limits) {
  const int rank = form.rank();
  UnitSplitting result;
  Mat emb = Mat::identity(rank);  // original coords of the current complement basis
  Mat cur = form.entries();

  int guard = 4 * rank + 16;
  while (cur.rows() > 0) {
    if (--guard < 0) {
      throw Error(ErrorKind::kInternal, "unit splitting failed to converge");
    }
    GramForm cur_form = GramForm::from_matrix(cur, "work");
    Candidates units = escalating_vectors(cur_form, {1, -1}, limits);

    if (units.empty()) {
      if (gram_is_even(cur) && !result.columns.empty()) {
        // Merge the last unit back in and look for one that mixes.
        Vec last_col = result.columns.back();
        int last_sign = result.signs.back();
        result.columns.pop_back();
        result.signs.pop_back();
        Mat merged_emb = hcat({column(last_col), emb});
        Mat merged = block_diag({Mat(1, 1, {last_sign}), cur});

        GramForm merged_form = GramForm::from_matrix(merged, "work");
        Candidates merged_units = escalating_vectors(merged_form, {1, -1}, limits);
        bool advanced = false;
        for (const Vec& v : merged_units) {
          Split split = split_off(merged, column(v));
          if (split.complement_gram.rows() == 0 || !gram_is_even(split.complement_gram)) {
            result.signs.push_back(quad(merged, v) > 0 ? 1 : -1);
            result.columns.push_back(mat_vec(merged_emb, v));
            emb = mat_mul(merged_emb, split.complement_basis);
            cur = split.complement_gram;
            advanced = true;
            break;
          }
        }
        if (advanced) continue;
        throw Error(ErrorKind::kInconclusive,
                    "no unit vector with odd complement within enumeration ceiling " +
                        std::to_string(limits.ceiling));
      }
      throw Error(ErrorKind::kInconclusive,
                  "no vector of self-pairing +-1 within enumeration ceiling " +
                      std::to_string(limits.ceiling));
    }

    // Prefer a unit whose complement stays odd; fall back to the first.
    const Vec* chosen = nullptr;
    std::optional<Split> chosen_split;
    constexpr std::size_t kComplementProbe = 64;
    for (std::size_t i = 0; i < units.size() && i < kComplementProbe; ++i) {
      Split split = split_off(cur, column(units[i]));
      if (split.complement_gram.rows() == 0 || !gram_is_even(split.complement_gram)) {
        chosen = &units[i];
        chosen_split = std::move(split);
        break;
      }
    }
    if (chosen == nullptr) {
      chosen = &units[0];
      chosen_split = split_off(cur, column(units[0]));
    }
    result.signs.push_back(quad(cur, *chosen) > 0 ? 1 : -1);
    result.columns.push_back(mat_vec(emb, *chosen));
    emb = mat_mul(emb, chosen_split->complement_basis);
    cur = chosen_split->complement_gram;
  }
  return result;
}

Classification diagonal_classification(const GramForm& form, FormKind kind,
                                       const UnitSplitting& splits) {
  const int rank = form.rank();
  // Positive entries first, preserving split order within each sign.
  Mat u(rank, rank);
  std::vector<int> diagonal;
  int at = 0;
  for (int pass = 0; pass < 2; ++pass) {
    int want = pass == 0 ? 1 : -1;
    for (std::size_t i = 0; i < splits.columns.size(); ++i) {
      if (splits.signs[i] != want) continue;
      u.set_col(at++, splits.columns[i]);
      diagonal.push_back(want);
    }
  }
  Mat canon(rank, rank);
  for (int i = 0; i < rank; ++i) canon.at(i, i) = diagonal[i];

  Classification out;
  out.kind = kind;
  out.canonical = GramForm::from_matrix(canon, kCanonicalBasis);
  out.change = BasisChange{u, form.basis_id(), kCanonicalBasis};
  out.diagonal = std::move(diagonal);
  if (!verify_change(form, out.change, out.canonical)) {
    throw Error(ErrorKind::kInternal, "diagonalization produced an unverified change of basis");
  }
  return out;
}

void require_unimodular(const GramForm& form) {
  if (!form.unimodular()) {
    throw Error(ErrorKind::kInvalidInput, "form is not unimodular (determinant " +
                                              std::to_string(form.determinant()) + ")");
  }
}

// Searches the definite even form `cur` (isometric to a +-E8 sum) for eight
// vectors whose Gram matrix is literally sign * (the fixed rank-8 gram).
// Escalates the enumeration bound: a bound can yield some vectors of
// self-pairing 2*sign without containing a full block basis.
std::optional<Mat> find_e8_block(const Mat& cur, int sign, const SearchLimits& limits) {
  const Mat& target_base = e8_gram();
  Mat target(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) target.at(i, j) = sign * target_base.at(i, j);
  }

  // One LLL reduction up front keeps the root coordinates small in the
  // scrambled basis; enumeration happens in reduced coordinates.
  Mat abs_gram = cur;
  if (sign < 0) {
    for (int i = 0; i < cur.rows(); ++i) {
      for (int j = 0; j < cur.cols(); ++j) abs_gram.at(i, j) = checked_neg(cur.at(i, j));
    }
  }
  Mat t = lll_transform_definite(abs_gram);
  GramForm search =
      GramForm::from_matrix(mat_mul(mat_mul(t.transposed(), cur), t), "work-red");

  int bound = limits.initial_bound;
  while (true) {
    // Candidate roots with both signs; slot 0 is sign-fixed since negating
    // all eight vectors preserves the Gram.
    std::vector<std::pair<Vec, Vec>> pool;  // (cur-coords vector, cur * vector)
    for (const auto& h : enumerate_vectors(search, 2 * sign, bound)) {
      Vec v = mat_vec(t, h.coords);
      pool.emplace_back(v, mat_vec(cur, v));
    }
    std::sort(pool.begin(), pool.end());
    const std::size_t half = pool.size();
    for (std::size_t i = 0; i < half; ++i) {
      Vec v(pool[i].first.size()), img(pool[i].second.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = -pool[i].first[j];
        img[j] = -pool[i].second[j];
      }
      pool.emplace_back(std::move(v), std::move(img));
    }

    std::vector<std::size_t> chosen;
    std::function<bool(int)> extend = [&](int slot) -> bool {
      if (slot == 8) return true;
      std::size_t limit = slot == 0 ? half : pool.size();
      for (std::size_t c = 0; c < limit; ++c) {
        bool ok = true;
        for (int i = 0; i < slot && ok; ++i) {
          std::int64_t pairing =
              std::inner_product(pool[chosen[i]].first.begin(), pool[chosen[i]].first.end(),
                                 pool[c].second.begin(), std::int64_t{0});
          if (pairing != target.at(i, slot)) ok = false;
        }
        if (!ok) continue;
        chosen.push_back(c);
        if (extend(slot + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (half >= 8 && extend(0)) {
      Mat block(cur.rows(), 8);
      for (int j = 0; j < 8; ++j) block.set_col(j, pool[chosen[j]].first);
      return block;
    }
    if (bound >= limits.ceiling) return std::nullopt;
    bound = std::min(bound * 2, limits.ceiling);
  }
}

}  // namespace

const char* form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::kOddDiagonal: return "odd-diagonal";
    case FormKind::kEvenIndefinite: return "even-indefinite";
    case FormKind::kDefiniteDiagonal: return "definite-diagonal";
    case FormKind::kUnrecognized: return "unrecognized";
  }
  return "unknown";
}

Classification diagonalize_odd(const GramForm& form, const SearchLimits& limits) {
  if (form.parity() != Parity::kOdd) {
    throw Error(ErrorKind::kInvalidInput, "form is not odd");
  }
  require_unimodular(form);
  UnitSplitting splits = split_units(form, limits);
  return diagonal_classification(form, FormKind::kOddDiagonal, splits);
}

std::pair<BasisChange, GramForm> split_hyperbolic(const GramForm& form,
                                                  const SearchLimits& limits) {
  if (form.parity() != Parity::kEven) {
    throw Error(ErrorKind::kInvalidInput, "form is not even");
  }
  require_unimodular(form);
  if (form.definite()) {
    throw Error(ErrorKind::kInvalidInput, "form is definite: no hyperbolic summand");
  }

  Candidates isotropic = escalating_vectors(form, {0}, limits);
  if (isotropic.empty()) {
    throw Error(ErrorKind::kInconclusive,
                "no isotropic vector within enumeration ceiling " +
                    std::to_string(limits.ceiling));
  }
  // Primitive representative, lexicographically smallest.
  std::vector<Vec> primitive;
  for (Vec v : isotropic) {
    std::int64_t g = vec_gcd(v);
    for (auto& x : v) x /= g;
    primitive.push_back(std::move(v));
  }
  std::sort(primitive.begin(), primitive.end());
  primitive.erase(std::unique(primitive.begin(), primitive.end()), primitive.end());
  const Vec e = primitive.front();

  // Dual vector: w = A e is primitive because A is unimodular, so w . f0 = 1
  // is solvable by iterated extended gcd.
  Vec w = mat_vec(form.entries(), e);
  Vec f0(w.size(), 0);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (g == 0) {
      g = std::abs(w[i]);
      f0[i] = w[i] > 0 ? 1 : -1;
      continue;
    }
    // extended gcd of (g, w[i])
    std::int64_t old_r = g, r = w[i], old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::int64_t tmp;
      tmp = checked_sub(old_r, checked_mul(q, r)); old_r = r; r = tmp;
      tmp = checked_sub(old_s, checked_mul(q, s)); old_s = s; s = tmp;
      tmp = checked_sub(old_t, checked_mul(q, t)); old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    for (auto& x : f0) x = checked_mul(x, old_s);
    f0[i] = checked_add(f0[i], old_t);
    g = old_r;
  }
  if (g != 1) {
    throw Error(ErrorKind::kInternal, "dual of a primitive isotropic vector is imprimitive");
  }

  // Kill the self-pairing of the dual: f = f0 - (f0.f0 / 2) e, integral since
  // the form is even.
  std::int64_t norm_f0 = evaluate(form, f0, f0);
  if (norm_f0 % 2 != 0) {
    throw Error(ErrorKind::kInternal, "odd self-pairing inside an even form");
  }
  Vec f(f0.size());
  for (std::size_t i = 0; i < f0.size(); ++i) {
    f[i] = checked_sub(f0[i], checked_mul(norm_f0 / 2, e[i]));
  }
  if (evaluate(form, e, e) != 0 || evaluate(form, f, f) != 0 || evaluate(form, e, f) != 1) {
    throw Error(ErrorKind::kInternal, "hyperbolic pair failed verification");
  }

  Mat pair = hcat({column(e), column(f)});
  Split split = split_off(form.entries(), pair);
  Mat u = hcat({pair, split.complement_basis});
  GramForm remaining = split.complement_gram.rows() > 0
                           ? GramForm::from_matrix(split.complement_gram, "split-rest")
                           : GramForm::empty("split-rest");
  BasisChange change{u, form.basis_id(), "split"};
  return {change, remaining};
}

Classification recognize_even_indefinite(const GramForm& form, const SearchLimits& limits) {
  if (form.parity() != Parity::kEven) {
    throw Error(ErrorKind::kInvalidInput, "form is not even");
  }
  require_unimodular(form);
  if (form.definite()) {
    throw Error(ErrorKind::kInvalidInput, "form is definite");
  }
  const int rank = form.rank();
  const int sig = form.invariants().signature();
  if (sig % 8 != 0) {
    throw Error(ErrorKind::kInvalidInput,
                "even unimodular form with signature not divisible by 8");
  }
  const int a = sig / 8;
  const int abs_a = a < 0 ? -a : a;
  const int b = rank / 2 - 4 * abs_a;
  if (b < 1 || rank != 8 * abs_a + 2 * b) {
    throw Error(ErrorKind::kInvalidInput, "invariants incompatible with an E8/H decomposition");
  }

  Mat emb = Mat::identity(rank);
  Mat cur = form.entries();
  std::vector<Vec> pair_cols;  // 2b columns, original coords
  for (int i = 0; i < b; ++i) {
    GramForm cur_form = GramForm::from_matrix(cur, "work");
    auto [change, remaining] = split_hyperbolic(cur_form, limits);
    pair_cols.push_back(mat_vec(emb, change.matrix.col(0)));
    pair_cols.push_back(mat_vec(emb, change.matrix.col(1)));
    Mat rest(cur.rows(), cur.rows() - 2);
    for (int j = 2; j < change.matrix.cols(); ++j) rest.set_col(j - 2, change.matrix.col(j));
    emb = mat_mul(emb, rest);
    cur = remaining.entries();
  }

  Classification out;
  out.kind = FormKind::kEvenIndefinite;
  out.e8_count = a;
  out.hyperbolic_count = b;

  std::vector<Vec> block_cols;  // 8*|a| columns, original coords
  Mat residual_gram;            // used only when literal extraction fails
  std::vector<Vec> residual_cols;
  if (abs_a > 0) {
    GramForm leftover = GramForm::from_matrix(cur, "leftover");
    bool expected = leftover.parity() == Parity::kEven && leftover.unimodular() &&
                    leftover.definite() && leftover.invariants().signature() == 8 * a;
    if (!expected) {
      throw Error(ErrorKind::kInternal,
                  "complement of the hyperbolic part has unexpected invariants");
    }
    int sign = a > 0 ? 1 : -1;
    for (int blk = 0; blk < abs_a; ++blk) {
      auto found = find_e8_block(cur, sign, limits);
      if (!found) {
        out.e8_literal = false;
        out.notes.push_back(
            "definite summand certified by invariants only (rank, signature, parity, "
            "determinant pin it up to isometry); no literal block basis within ceiling");
        residual_gram = cur;
        for (int j = 0; j < emb.cols(); ++j) residual_cols.push_back(emb.col(j));
        break;
      }
      for (int j = 0; j < 8; ++j) block_cols.push_back(mat_vec(emb, found->col(j)));
      if (cur.rows() > 8) {
        Split split = split_off(cur, *found);
        emb = mat_mul(emb, split.complement_basis);
        cur = split.complement_gram;
      } else {
        cur = Mat(0, 0);
        emb = Mat(rank, 0);
      }
    }
  }

  // Canonical layout: E8 blocks first, hyperbolic planes after.
  const int n_known = static_cast<int>(block_cols.size());
  Mat u(rank, rank);
  int at = 0;
  for (const Vec& c : block_cols) u.set_col(at++, c);
  for (const Vec& c : residual_cols) u.set_col(at++, c);
  for (const Vec& c : pair_cols) u.set_col(at++, c);

  std::vector<Mat> blocks;
  Mat signed_a8(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) signed_a8.at(i, j) = (a > 0 ? 1 : -1) * e8_gram().at(i, j);
  }
  for (int i = 0; i < n_known / 8; ++i) blocks.push_back(signed_a8);
  if (!residual_cols.empty()) blocks.push_back(residual_gram);
  Mat h(2, 2, {0, 1, 1, 0});
  for (int i = 0; i < b; ++i) blocks.push_back(h);

  out.canonical = GramForm::from_matrix(block_diag(blocks), kCanonicalBasis);
  out.change = BasisChange{u, form.basis_id(), kCanonicalBasis};
  if (!verify_change(form, out.change, out.canonical)) {
    throw Error(ErrorKind::kInternal, "even recognition produced an unverified change of basis");
  }
  return out;
}

Classification check_definite_diagonal(const GramForm& form, const SearchLimits& limits) {
  require_unimodular(form);
  if (!form.definite()) {
    throw Error(ErrorKind::kInvalidInput, "form is indefinite");
  }
  auto unrecognized = [&](const std::string& why) {
    Classification out;
    out.kind = FormKind::kUnrecognized;
    out.canonical = form.with_basis_id(kCanonicalBasis);
    out.change = BasisChange{Mat::identity(form.rank()), form.basis_id(), kCanonicalBasis};
    out.notes.push_back(why);
    out.notes.push_back(
        "a definite form that is not congruent to +-identity cannot be the intersection "
        "form of a closed oriented PL 4-manifold (Donaldson)");
    return out;
  };
  if (form.parity() == Parity::kEven && form.rank() > 0) {
    return unrecognized("definite even form: no vectors of self-pairing +-1 exist");
  }
  try {
    UnitSplitting splits = split_units(form, limits);
    return diagonal_classification(form, FormKind::kDefiniteDiagonal, splits);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInconclusive) {
      return unrecognized(std::string("unit-vector splitting got stuck: ") + e.what());
    }
    throw;
  }
}

Classification classify(const GramForm& form, const SearchLimits& limits) {
  require_unimodular(form);
  if (form.definite()) {
    return check_definite_diagonal(form, limits);
  }
  if (form.parity() == Parity::kOdd) {
    return diagonalize_odd(form, limits);
  }
  return recognize_even_indefinite(form, limits);
}

}  // namespace covermap
