#pragma once

#include "phodge/algebra/sym_model.hpp"

namespace phodge::test {

// Built-in models are expensive enough to build once per test binary.
struct Model {
  algebra::BBSpace bb;
  algebra::GradedAlgebra algebra;
};

inline const Model& k3() {
  static const Model m{algebra::k3_space(), algebra::build_sym_model(algebra::k3_space())};
  return m;
}

inline const Model& k3hilb2() {
  static const Model m{algebra::k3_hilb2_space(), algebra::build_sym_model(algebra::k3_hilb2_space())};
  return m;
}

inline const Model& toy_b3() {
  static const Model m{algebra::toy_b3_space(), algebra::build_sym_model(algebra::toy_b3_space())};
  return m;
}

}  // namespace phodge::test
