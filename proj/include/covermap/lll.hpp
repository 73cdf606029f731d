#pragma once

#include "covermap/intmat.hpp"

namespace covermap {

// Exact LLL basis reduction for a positive definite integer Gram matrix.
// Returns a unimodular T such that T^T gram T is the Gram of the reduced
// basis. Gram-Schmidt data is kept in exact rationals, so the Lovasz
// condition (delta = 99/100) is decided without rounding error.
Mat lll_transform_definite(const Mat& gram);

}  // namespace covermap
