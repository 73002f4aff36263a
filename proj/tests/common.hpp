#pragma once

#include "morita/bimodule.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace morita;

inline const Field Q = Field::rationals();
inline const Field F7 = Field::prime(7);

// Acceptance suite of separable algebras.
inline std::vector<std::pair<std::string, AlgebraPtr>> separable_suite() {
  return {{"k", ground_field(Q)},
          {"QxQ", product_algebra(Q, 2)},
          {"Q[C2]", group_algebra(Q, cyclic_group_table(2), "Q[C2]")},
          {"Q[S3]", group_algebra(Q, symmetric_group_table(3), "Q[S3]")},
          {"M2(Q)", matrix_algebra(Q, 2)},
          {"F7[C3]", group_algebra(F7, cyclic_group_table(3), "F7[C3]")}};
}

// One-dimensional (A,B)-bimodule spanned by a vector v of A, which must satisfy a v, v b in span(v).
inline BimodulePtr span_bimodule(const AlgebraPtr& a, const Vector& v, std::size_t pivot) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix x(a->field(), 1, 1), y(a->field(), 1, 1);
    x(0, 0) = a->multiply(a->basis(i), v)[pivot] / v[pivot];
    y(0, 0) = a->multiply(v, a->basis(i))[pivot] / v[pivot];
    l.push_back(x);
    r.push_back(y);
  }
  return make_bimodule(a, a, 1, l, r);
}

// Left ideal A e as an (A,k)-bimodule, or any left module given by matrices.
inline BimodulePtr left_module(const AlgebraPtr& a, const std::vector<Matrix>& acts) {
  auto k = ground_field(a->field());
  std::size_t d = acts.at(0).rows();
  return make_bimodule(a, k, d, acts, {Matrix::identity(a->field(), d)});
}

}  // namespace testing_support
