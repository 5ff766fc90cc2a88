#include "phodge/linalg/matrix.hpp"

namespace phodge::linalg {

std::string to_string(const Matrix<Rational>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += m(r, c).to_string();
    }
    out += "]\n";
  }
  return out;
}

}  // namespace phodge::linalg
