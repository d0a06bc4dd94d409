#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "lohe/tensor.hpp"

namespace lohe::ode {

inline void axpy(std::vector<double>& y, double c, const std::vector<double>& k) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * k[i];
}

inline void axpy(std::vector<Complex>& y, double c, const std::vector<Complex>& k) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * k[i];
}

inline void axpy(std::vector<std::vector<double>>& y, double c,
                 const std::vector<std::vector<double>>& k) {
  for (std::size_t j = 0; j < y.size(); ++j) axpy(y[j], c, k[j]);
}

inline void axpy(std::vector<DenseTensor>& y, double c, const std::vector<DenseTensor>& k) {
  for (std::size_t j = 0; j < y.size(); ++j) axpy(y[j].entries(), c, k[j].entries());
}

inline void axpy(std::vector<std::vector<DenseTensor>>& y, double c,
                 const std::vector<std::vector<DenseTensor>>& k) {
  for (std::size_t l = 0; l < y.size(); ++l) axpy(y[l], c, k[l]);
}

inline bool all_finite(const std::vector<double>& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline bool all_finite(const std::vector<Complex>& y) {
  for (const Complex& v : y) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

inline bool all_finite(const std::vector<std::vector<double>>& y) {
  for (const auto& row : y) {
    if (!all_finite(row)) return false;
  }
  return true;
}

inline bool all_finite(const std::vector<DenseTensor>& y) {
  for (const auto& t : y) {
    if (!all_finite(t.entries())) return false;
  }
  return true;
}

inline bool all_finite(const std::vector<std::vector<DenseTensor>>& y) {
  for (const auto& l : y) {
    if (!all_finite(l)) return false;
  }
  return true;
}

/// One classical fourth-order Runge-Kutta step for an autonomous system.
template <class State, class Rhs>
void rk4_step(State& y, double h, Rhs&& f) {
  const State k1 = f(y);
  State stage = y;
  axpy(stage, 0.5 * h, k1);
  const State k2 = f(stage);
  stage = y;
  axpy(stage, 0.5 * h, k2);
  const State k3 = f(stage);
  stage = y;
  axpy(stage, h, k3);
  const State k4 = f(stage);
  axpy(y, h / 6.0, k1);
  axpy(y, h / 3.0, k2);
  axpy(y, h / 3.0, k3);
  axpy(y, h / 6.0, k4);
}

}  // namespace lohe::ode
