#pragma once

#include "covermap/intmat.hpp"

namespace covermap {

// Gram matrix of the rank-8 even positive definite unimodular lattice, in the
// basis used throughout this project.
const Mat& e8_gram();

// Columns g_1..g_8 span a sublattice of the above on which the form restricts
// to 2 * I_8 (an orthogonal frame of vectors of self-pairing 2).
const Mat& e8_frame_columns();

}  // namespace covermap
