#pragma once

#include <optional>
#include <vector>

#include "lohe/matrix.hpp"
#include "lohe/symbol.hpp"
#include "lohe/tensor.hpp"

namespace lohe {

/// One sampled row of scalar functionals; only the fields that make sense for
/// the state kind are populated.
struct DiagnosticsRecord {
  double t = 0.0;
  std::optional<double> diameter_x;  // max pairwise distance of the first ensemble
  std::optional<double> alignment_x; // min pairwise inner product
  std::optional<double> diameter_u;  // max pairwise Frobenius distance of matrices
  std::optional<double> s_u;         // max |d - <U_i,U_j>_F|
  std::optional<double> diameter_v;
  std::optional<double> s_v;
  std::optional<double> l_total;     // D(U)+D(V)+S(U)+S(V)
  std::optional<double> potential;
  std::optional<double> residual;
  std::optional<double> norm_drift;  // max_j | ||T_j||_F - 1 |
};

// -- tensor ensembles ---------------------------------------------------------

double ensemble_diameter(const std::vector<DenseTensor>& ts);
/// min over i != j of Re<T_i, T_j>_F.
double ensemble_alignment(const std::vector<DenseTensor>& ts);
double max_norm_drift(const std::vector<DenseTensor>& ts);

/// V = (kappa / 2N) sum_{i,j} <T_i, T_j>_F (real part; the sum is real).
double potential(const std::vector<DenseTensor>& ts, double kappa);
/// Product form of the potential for per-component states.
double potential_product(const std::vector<std::vector<DenseTensor>>& components, double kappa);

/// Max over components, patterns with positive strength, and particles of the
/// Frobenius norm of the uncontracted gain/loss aggregate. `states[l][j]` is
/// particle j of component l; a single component uses the plain ensemble mean.
double coupling_residual(const std::vector<CharacteristicSymbol>& components,
                         const std::vector<std::vector<DenseTensor>>& states);

struct RateFit {
  double rate = 0.0;
  double r2 = 0.0;
};

/// Least-squares slope of log(value) against t over the tail half of the
/// samples. Requires positive values and at least 10 samples.
RateFit exp_rate_fit(const std::vector<double>& times, const std::vector<double>& values);

// -- real vector ensembles ----------------------------------------------------

double vec_diameter(const std::vector<RealVec>& xs);
double vec_alignment(const std::vector<RealVec>& xs);

// -- matrix ensembles ---------------------------------------------------------

template <class T>
double matrix_diameter(const std::vector<SquareMatrix<T>>& us) {
  double worst = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      worst = std::max(worst, fro_norm(us[i] - us[j]));
    }
  }
  return worst;
}

/// min over i != j of Re<U_i, U_j>_F.
template <class T>
double matrix_alignment(const std::vector<SquareMatrix<T>>& us) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < us.size(); ++i) {
    for (std::size_t j = 0; j < us.size(); ++j) {
      if (i == j) continue;
      double v;
      if constexpr (std::is_same_v<T, double>) {
        v = fro_inner(us[i], us[j]);
      } else {
        v = fro_inner(us[i], us[j]).real();
      }
      best = std::min(best, v);
    }
  }
  return best;
}

/// S(U) = max |d - <U_i, U_j>_F| with the complex modulus.
template <class T>
double s_functional(const std::vector<SquareMatrix<T>>& us, double d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    for (std::size_t j = 0; j < us.size(); ++j) {
      worst = std::max(worst, std::abs(d - static_cast<std::complex<double>>(fro_inner(us[i], us[j]))));
    }
  }
  return worst;
}

template <class T>
double l_functional(const std::vector<SquareMatrix<T>>& us, const std::vector<SquareMatrix<T>>& vs) {
  return matrix_diameter(us) + matrix_diameter(vs) + s_functional(us, us.front().n()) +
         s_functional(vs, vs.front().n());
}

// -- record builders ----------------------------------------------------------

DiagnosticsRecord functionals(double t, const std::vector<DenseTensor>& ts);
DiagnosticsRecord functionals(double t, const std::vector<RealVec>& xs);
template <class T>
DiagnosticsRecord functionals(double t, const std::vector<SquareMatrix<T>>& us) {
  DiagnosticsRecord r;
  r.t = t;
  r.diameter_u = matrix_diameter(us);
  r.s_u = s_functional(us, us.front().n());
  return r;
}
template <class T>
DiagnosticsRecord functionals(double t, const std::vector<SquareMatrix<T>>& us,
                              const std::vector<SquareMatrix<T>>& vs) {
  DiagnosticsRecord r;
  r.t = t;
  r.diameter_u = matrix_diameter(us);
  r.s_u = s_functional(us, us.front().n());
  r.diameter_v = matrix_diameter(vs);
  r.s_v = s_functional(vs, vs.front().n());
  r.l_total = *r.diameter_u + *r.diameter_v + *r.s_u + *r.s_v;
  return r;
}

}  // namespace lohe
