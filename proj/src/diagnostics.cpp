#include "lohe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lohe {

double ensemble_diameter(const std::vector<DenseTensor>& ts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      worst = std::max(worst, frobenius_norm(ts[i] - ts[j]));
    }
  }
  return worst;
}

double ensemble_alignment(const std::vector<DenseTensor>& ts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, frobenius_inner(ts[i], ts[j]).real());
    }
  }
  return best;
}

double max_norm_drift(const std::vector<DenseTensor>& ts) {
  double worst = 0.0;
  for (const auto& t : ts) worst = std::max(worst, std::abs(frobenius_norm(t) - 1.0));
  return worst;
}

double potential(const std::vector<DenseTensor>& ts, double kappa) {
  const double n = static_cast<double>(ts.size());
  double acc = 0.0;
  for (const auto& a : ts) {
    for (const auto& b : ts) acc += frobenius_inner(a, b).real();
  }
  return kappa / (2.0 * n) * acc;
}

double potential_product(const std::vector<std::vector<DenseTensor>>& components, double kappa) {
  const std::size_t n = components.front().size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex prod{1.0, 0.0};
      for (const auto& comp : components) prod *= frobenius_inner(comp[i], comp[j]);
      acc += prod.real();
    }
  }
  return kappa / (2.0 * static_cast<double>(n)) * acc;
}

double coupling_residual(const std::vector<CharacteristicSymbol>& components,
                         const std::vector<std::vector<DenseTensor>>& states) {
  if (components.size() != states.size()) throw ShapeError("coupling_residual: component count mismatch");
  const std::size_t ncomp = components.size();
  const std::size_t n = states.front().size();

  // cross-component Gram matrices g[l][j*N+k] = <T_j^l, T_k^l>_F
  std::vector<std::vector<Complex>> gram(ncomp, std::vector<Complex>(n * n));
  for (std::size_t l = 0; l < ncomp; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        gram[l][j * n + k] = frobenius_inner(states[l][j], states[l][k]);
      }
    }
  }

  double worst = 0.0;
  for (std::size_t l = 0; l < ncomp; ++l) {
    const auto& sym = components[l];
    // weighted means M_j = (1/N) sum_k (prod_{p != l} g_p[j,k]) T_k
    std::vector<DenseTensor> mean(n, DenseTensor{sym.size});
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Complex w{1.0, 0.0};
        for (std::size_t p = 0; p < ncomp; ++p) {
          if (p != l) w *= gram[p][j * n + k];
        }
        const auto& tk = states[l][k];
        for (std::size_t f = 0; f < tk.total(); ++f) mean[j][f] += w * tk[f];
      }
      for (std::size_t f = 0; f < mean[j].total(); ++f) mean[j][f] /= static_cast<double>(n);
    }
    for (std::uint32_t ix = 0; ix < (1u << sym.rank()); ++ix) {
      if (sym.coupling.at_index(ix) <= 0.0) continue;
      const Bitstring pattern = Bitstring::from_index(ix, sym.rank());
      for (std::size_t j = 0; j < n; ++j) {
        worst = std::max(worst, frobenius_norm(pair_term(mean[j], states[l][j], pattern)));
      }
    }
  }
  return worst;
}

RateFit exp_rate_fit(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size()) throw ShapeError("exp_rate_fit: length mismatch");
  if (times.size() < 10) throw ShapeError("exp_rate_fit: need at least 10 samples");
  const std::size_t start = times.size() / 2;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t n = 0;
  for (std::size_t i = start; i < times.size(); ++i) {
    if (!(values[i] > 0.0)) throw ShapeError("exp_rate_fit: values must be positive");
    const double y = std::log(values[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
    ++n;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * stt - st * st;
  RateFit fit;
  if (denom == 0.0) return fit;
  fit.rate = (dn * sty - st * sy) / denom;
  const double mean_y = sy / dn;
  double ss_tot = 0.0, ss_res = 0.0;
  const double intercept = mean_y - fit.rate * st / dn;
  for (std::size_t i = start; i < times.size(); ++i) {
    const double y = std::log(values[i]);
    ss_tot += (y - mean_y) * (y - mean_y);
    const double r = y - (intercept + fit.rate * times[i]);
    ss_res += r * r;
  }
  fit.r2 = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  return fit;
}

double vec_diameter(const std::vector<RealVec>& xs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < xs[i].size(); ++p) {
        const double d = xs[i][p] - xs[j][p];
        acc += d * d;
      }
      worst = std::max(worst, std::sqrt(acc));
    }
  }
  return worst;
}

double vec_alignment(const std::vector<RealVec>& xs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      double acc = 0.0;
      for (std::size_t p = 0; p < xs[i].size(); ++p) acc += xs[i][p] * xs[j][p];
      best = std::min(best, acc);
    }
  }
  return best;
}

DiagnosticsRecord functionals(double t, const std::vector<DenseTensor>& ts) {
  DiagnosticsRecord r;
  r.t = t;
  r.diameter_x = ensemble_diameter(ts);
  r.alignment_x = ensemble_alignment(ts);
  r.potential = potential(ts, 1.0);
  r.norm_drift = max_norm_drift(ts);
  return r;
}

DiagnosticsRecord functionals(double t, const std::vector<RealVec>& xs) {
  DiagnosticsRecord r;
  r.t = t;
  r.diameter_x = vec_diameter(xs);
  r.alignment_x = vec_alignment(xs);
  return r;
}

}  // namespace lohe
