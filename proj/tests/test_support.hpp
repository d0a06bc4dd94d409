#pragma once

#include <doctest.h>

#include "lohe/generate.hpp"
#include "lohe/tensor.hpp"

namespace lohe::test {

inline DenseTensor vec2(Complex a, Complex b) {
  return DenseTensor(SizeVector{{2}}, {a, b});
}

inline DenseTensor mat22(Complex a, Complex b, Complex c, Complex d) {
  return DenseTensor(SizeVector{{2, 2}}, {a, b, c, d});
}

inline DenseTensor random_tensor(const SizeVector& size, Rng& rng, bool real = false) {
  DenseTensor t(size);
  for (Complex& v : t.entries()) {
    v = real ? Complex{rng.gauss(), 0.0} : Complex{rng.gauss(), rng.gauss()};
  }
  return t;
}

inline double gap(const DenseTensor& a, const DenseTensor& b) { return frobenius_norm(a - b); }

}  // namespace lohe::test
