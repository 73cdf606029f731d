#include "covermap/e8.hpp"

namespace covermap {

const Mat& e8_gram() {
  static const Mat a8(8, 8,
                      {2, 1, 0, 0, 0, 0, 0, 0,
                       1, 2, 1, 0, 0, 0, 0, 0,
                       0, 1, 2, 1, 0, 0, 0, 0,
                       0, 0, 1, 2, 1, 0, 0, 0,
                       0, 0, 0, 1, 2, 1, 0, 1,
                       0, 0, 0, 0, 1, 2, 1, 0,
                       0, 0, 0, 0, 0, 1, 2, 0,
                       0, 0, 0, 0, 1, 0, 0, 2});
  return a8;
}

const Mat& e8_frame_columns() {
  static const Mat g(8, 8,
                     {0, 0, 0, 0,  0,  0,  0, -2,
                      1, 0, 0, 0,  0,  1,  1,  3,
                      0, 0, 0, 0,  0, -2, -2, -4,
                      0, 1, 0, 0,  1,  2,  3,  5,
                      0, 0, 0, 0, -2, -2, -4, -6,
                      0, 0, 1, 0,  1,  1,  3,  4,
                      0, 0, 0, 0,  0,  0, -2, -2,
                      0, 0, 0, 1,  1,  1,  2,  3});
  return g;
}

}  // namespace covermap
