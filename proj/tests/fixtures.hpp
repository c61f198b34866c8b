#ifndef LSCSVM_TESTS_FIXTURES_HPP_
#define LSCSVM_TESTS_FIXTURES_HPP_

#include "lscsvm/data.hpp"

namespace fixtures {

// Ten points on a 5 x 2 lattice with spacing 3: under the Gaussian kernel
// with sigma = 1 the off-diagonal Gram entries are at most exp(-9), so
// lambda_min(A) is close to 1. The three leftmost columns carry +1 except
// one point, giving a problem that is not trivially separable.
inline lscsvm::Dataset separated_instance() {
  lscsvm::Dataset d;
  d.inputs.resize(10, 2);
  d.labels.resize(10);
  for (int i = 0; i < 10; ++i) {
    d.inputs(i, 0) = 3.0 * (i % 5);
    d.inputs(i, 1) = 3.0 * (i / 5);
    d.labels[static_cast<std::size_t>(i)] = (i % 5) < 3 ? 1 : -1;
  }
  d.labels[7] = -1;
  return d;
}

}  // namespace fixtures

#endif  // LSCSVM_TESTS_FIXTURES_HPP_
