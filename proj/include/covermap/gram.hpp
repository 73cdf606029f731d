#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covermap/intmat.hpp"

namespace covermap {

enum class Parity { kEven, kOdd };

inline const char* parity_name(Parity p) { return p == Parity::kEven ? "even" : "odd"; }

struct FormInvariants {
  int rank = 0;
  int signature_pos = 0;
  int signature_neg = 0;
  Parity parity = Parity::kEven;
  std::int64_t determinant = 1;

  int signature() const { return signature_pos - signature_neg; }
  bool unimodular() const { return determinant == 1 || determinant == -1; }
  bool definite() const { return signature_pos == 0 || signature_neg == 0; }
  bool indefinite() const { return signature_pos > 0 && signature_neg > 0; }

  bool operator==(const FormInvariants&) const = default;
};

// Nondegenerate symmetric bilinear form over Z, given by its Gram matrix in
// some basis. Invariants are computed exactly at construction; degenerate
// matrices are rejected (the intended inputs are Poincare-dual pairings,
// which are unimodular, but any nonzero determinant is accepted).
class GramForm {
 public:
  GramForm() = default;  // the rank-0 form

  static GramForm from_matrix(Mat entries, std::string basis_id = "std");

  // Rank-0 forms arise internally as orthogonal complements of full-rank
  // sublattices; external inputs must have rank >= 1.
  static GramForm empty(std::string basis_id = "std");

  int rank() const { return inv_.rank; }
  const Mat& entries() const { return entries_; }
  const FormInvariants& invariants() const { return inv_; }
  Parity parity() const { return inv_.parity; }
  std::int64_t determinant() const { return inv_.determinant; }
  bool unimodular() const { return inv_.unimodular(); }
  bool definite() const { return inv_.definite(); }
  bool indefinite() const { return inv_.indefinite(); }
  const std::string& basis_id() const { return basis_id_; }

  GramForm negated() const;
  GramForm with_basis_id(std::string basis_id) const;

  bool operator==(const GramForm& other) const {
    return entries_ == other.entries_;  // invariants are derived data
  }

 private:
  Mat entries_;
  FormInvariants inv_;
  std::string basis_id_;
};

// Integer homology class (coordinates in the basis named by basis_id).
struct HomologyClass {
  Vec coords;
  std::string basis_id;

  bool operator==(const HomologyClass&) const = default;
};

// Unimodular change of basis. Columns express the target basis vectors in
// source coordinates, so for a form A in the source basis the matrix U
// satisfies U^T A U = (form in target basis), and target coordinates y map
// to source coordinates U y.
struct BasisChange {
  Mat matrix;
  std::string source_basis_id;
  std::string target_basis_id;
};

// Checks |det U| = 1 and U^T * source * U == target, exactly.
bool verify_change(const GramForm& source, const BasisChange& change, const GramForm& target);

// a^T * entries * b. Throws on dimension or basis mismatch.
std::int64_t evaluate(const GramForm& form, const HomologyClass& a, const HomologyClass& b);
std::int64_t evaluate(const GramForm& form, const Vec& a, const Vec& b);

GramForm direct_sum(const GramForm& a, const GramForm& b);

// All nonzero integer vectors v with coordinates in [-coord_bound, coord_bound]
// and v^T A v = norm, one representative per antipodal pair {v, -v} (the one
// whose first nonzero coordinate is positive), sorted lexicographically.
std::vector<HomologyClass> enumerate_vectors(const GramForm& form, std::int64_t norm,
                                             int coord_bound);

enum class CongruenceOutcome { kFound, kIncongruent, kNotFound };

struct CongruenceSearch {
  CongruenceOutcome outcome;
  std::optional<BasisChange> change;  // set iff kFound, verified
  std::string detail;
};

// Backtracking search for unimodular U with U^T A U = B, entries of U bounded
// by coord_bound. Intended as a desk-scale oracle (rank <= 4). kIncongruent is
// definitive (invariants differ); kNotFound only means the bounded search was
// exhausted.
CongruenceSearch congruent_brute(const GramForm& a, const GramForm& b, int coord_bound);

}  // namespace covermap
