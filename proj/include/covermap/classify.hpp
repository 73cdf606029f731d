#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covermap/gram.hpp"

namespace covermap {

// Bound-escalation schedule for vector searches: start at initial_bound and
// double until ceiling. Exhaustion is reported as inconclusive, never as a
// silent wrong answer. COVERMAP_ENUM_CEILING overrides the ceiling in the CLI.
struct SearchLimits {
  int initial_bound = 2;
  int ceiling = 32;
};

enum class FormKind { kOddDiagonal, kEvenIndefinite, kDefiniteDiagonal, kUnrecognized };

const char* form_kind_name(FormKind k);

// Constructive recognition result. `change` carries a verified congruence
// from the input basis to `canonical`:
//   kOddDiagonal / kDefiniteDiagonal: canonical = diag(+1 x p, -1 x q)
//   kEvenIndefinite: canonical = (a copies of +-A8) ++ (b copies of H),
//     literally when e8_literal; otherwise the definite block keeps the basis
//     the splitting produced and only its invariants are certified.
//   kUnrecognized: identity change, canonical = input, notes explain.
struct Classification {
  FormKind kind = FormKind::kUnrecognized;
  BasisChange change;
  GramForm canonical;
  std::vector<int> diagonal;  // diagonal kinds: the +-1 entries in order
  int e8_count = 0;           // even kind: signed count a of +-E8 summands
  int hyperbolic_count = 0;   // even kind: count b of H summands
  bool e8_literal = true;
  std::vector<std::string> notes;
};

// Diagonalizes an odd unimodular form by splitting off vectors of self-pairing
// +-1 (bounded enumeration with escalating bounds). Valid for indefinite forms
// (always diagonalizable) and for definite forms congruent to +-identity.
// Throws kInvalidInput (not odd / not unimodular) or kInconclusive when the
// escalation ceiling is exhausted.
Classification diagonalize_odd(const GramForm& form, const SearchLimits& limits = {});

// Splits a hyperbolic pair off an even indefinite unimodular form. The first
// two columns of the returned change are the pair (self-pairings 0, 0, cross
// pairing 1); the rest span the orthogonal complement, whose induced form is
// returned alongside.
std::pair<BasisChange, GramForm> split_hyperbolic(const GramForm& form,
                                                  const SearchLimits& limits = {});

// Recognizes an even indefinite unimodular form as a copies of +-E8 plus
// b >= 1 hyperbolic planes, with a = signature/8 and b = rank/2 - 4|a|.
Classification recognize_even_indefinite(const GramForm& form, const SearchLimits& limits = {});

// Attempts congruence to +-identity for definite unimodular forms. Failure is
// reported as kUnrecognized (with a diagnostic), not thrown: an even or
// non-diagonalizable definite form cannot be the intersection form of a
// closed oriented PL 4-manifold (Donaldson), but that judgment is the
// caller's.
Classification check_definite_diagonal(const GramForm& form, const SearchLimits& limits = {});

// Dispatcher over the three regimes.
Classification classify(const GramForm& form, const SearchLimits& limits = {});

}  // namespace covermap
