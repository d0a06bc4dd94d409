#include "lohe/dynamics.hpp"

#include <cmath>

#include "lohe/parallel.hpp"
#include "lohe/rk4.hpp"

namespace lohe {

namespace {

void check_state(const CharacteristicSymbol& c, const std::vector<DenseTensor>& state) {
  if (static_cast<int>(state.size()) != c.ensemble_size()) {
    throw EnsembleSizeError("state particle count differs from symbol ensemble size");
  }
  for (const auto& t : state) {
    if (t.size() != c.size) throw ShapeError("state tensor size differs from symbol size");
  }
}

DenseTensor ensemble_mean(const SizeVector& size, const std::vector<DenseTensor>& state) {
  DenseTensor mean(size);
  for (const auto& t : state) {
    for (std::size_t f = 0; f < t.total(); ++f) mean[f] += t[f];
  }
  const double inv = 1.0 / static_cast<double>(state.size());
  for (Complex& v : mean.entries()) v *= inv;
  return mean;
}

DenseTensor particle_rhs(const CharacteristicSymbol& c, const DenseTensor& mean,
                         const FrequencyTensor& freq, const DenseTensor& tj) {
  DenseTensor out = apply_freq(freq, tj);
  for (std::uint32_t ix = 0; ix < (1u << c.rank()); ++ix) {
    const double kappa = c.coupling.at_index(ix);
    if (kappa == 0.0) continue;
    const DenseTensor inc = coupling_increment(mean, tj, Bitstring::from_index(ix, c.rank()), kappa);
    for (std::size_t f = 0; f < out.total(); ++f) out[f] += inc[f];
  }
  return out;
}

// The count is rounded so the final sample lands exactly on t_end; the actual
// uniform step is t_end / steps, within rounding of the requested h.
int steps_for(const IntegrateOptions& opt) {
  if (!(opt.h > 0.0) || !(opt.t_end > 0.0)) throw ShapeError("integrate: h and t_end must be positive");
  if (opt.sample_every < 1) throw ShapeError("integrate: sample_every must be >= 1");
  const int steps = static_cast<int>(std::llround(opt.t_end / opt.h));
  return steps < 1 ? 1 : steps;
}

void renormalize_particles(std::vector<DenseTensor>& state) {
  for (auto& t : state) {
    const double norm = frobenius_norm(t);
    if (norm > 0.0) {
      for (Complex& v : t.entries()) v /= norm;
    }
  }
}

std::size_t particle_work(const CharacteristicSymbol& c) {
  std::size_t active = 1;
  for (double v : c.coupling.values()) {
    if (v != 0.0) ++active;
  }
  const std::size_t d = c.size.total();
  return active * d * d;
}

}  // namespace

std::vector<DenseTensor> lt_rhs(const CharacteristicSymbol& c, const std::vector<DenseTensor>& state) {
  check_state(c, state);
  const DenseTensor mean = ensemble_mean(c.size, state);
  std::vector<DenseTensor> out(state.size());
  parallel_for(state.size(), particle_work(c), [&](std::size_t j) {
    out[j] = particle_rhs(c, mean, c.freqs[j], state[j]);
  });
  return out;
}

std::vector<DenseTensor> lt_rhs(const CharacteristicSymbol& c, const EnsembleState& state) {
  return lt_rhs(c, state.tensors);
}

std::vector<DenseTensor> lt_rhs_pairwise(const CharacteristicSymbol& c,
                                         const std::vector<DenseTensor>& state) {
  check_state(c, state);
  const double inv_n = 1.0 / static_cast<double>(state.size());
  std::vector<DenseTensor> out(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    DenseTensor acc = apply_freq(c.freqs[j], state[j]);
    for (std::uint32_t ix = 0; ix < (1u << c.rank()); ++ix) {
      const double kappa = c.coupling.at_index(ix);
      if (kappa == 0.0) continue;
      const Bitstring pattern = Bitstring::from_index(ix, c.rank());
      for (const auto& tk : state) {
        const DenseTensor inc = coupling_increment(tk, state[j], pattern, kappa * inv_n);
        for (std::size_t f = 0; f < acc.total(); ++f) acc[f] += inc[f];
      }
    }
    out[j] = acc;
  }
  return out;
}

std::vector<std::vector<DenseTensor>> weakly_coupled_rhs(
    const std::vector<CharacteristicSymbol>& components,
    const std::vector<std::vector<DenseTensor>>& states) {
  if (components.empty() || components.size() != states.size()) {
    throw ShapeError("weakly_coupled_rhs: component count mismatch");
  }
  const std::size_t ncomp = components.size();
  const std::size_t n = states.front().size();
  for (std::size_t l = 0; l < ncomp; ++l) {
    if (states[l].size() != n) throw EnsembleSizeError("weakly_coupled_rhs: unequal ensemble sizes");
    check_state(components[l], states[l]);
  }

  // pairwise Gram matrices per component, formed once and sequentially
  std::vector<std::vector<Complex>> gram(ncomp, std::vector<Complex>(n * n));
  for (std::size_t l = 0; l < ncomp; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        gram[l][j * n + k] = frobenius_inner(states[l][j], states[l][k]);
      }
    }
  }

  std::size_t work = 0;
  for (const auto& sym : components) work = std::max(work, particle_work(sym));
  std::vector<std::vector<DenseTensor>> out(ncomp);
  for (std::size_t l = 0; l < ncomp; ++l) out[l].resize(n);
  parallel_for(ncomp * n, work, [&](std::size_t slot) {
    const std::size_t l = slot / n;
    const std::size_t j = slot % n;
    const auto& sym = components[l];
    DenseTensor mean(sym.size);
    for (std::size_t k = 0; k < n; ++k) {
      Complex w{1.0, 0.0};
      for (std::size_t p = 0; p < ncomp; ++p) {
        if (p != l) w *= gram[p][j * n + k];
      }
      const auto& tk = states[l][k];
      for (std::size_t f = 0; f < tk.total(); ++f) mean[f] += w * tk[f];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Complex& v : mean.entries()) v *= inv_n;
    out[l][j] = particle_rhs(sym, mean, sym.freqs[j], states[l][j]);
  });
  return out;
}

std::vector<std::vector<DenseTensor>> weakly_coupled_rhs(
    const std::vector<CharacteristicSymbol>& components, const ComponentStates& states) {
  return weakly_coupled_rhs(components, states.components);
}

Trajectory integrate_symbol(const CharacteristicSymbol& c, const IntegrateOptions& opt) {
  return integrate_symbol(c, c.initial, opt);
}

Trajectory integrate_symbol(const CharacteristicSymbol& c, std::vector<DenseTensor> state,
                            const IntegrateOptions& opt) {
  check_state(c, state);
  const int steps = steps_for(opt);
  const double h = opt.t_end / static_cast<double>(steps);

  Trajectory traj;
  double pending_drift = max_norm_drift(state);
  const auto sample = [&](int step) {
    const double t = static_cast<double>(step) * h;
    traj.times.push_back(t);
    traj.states.push_back(state);
    DiagnosticsRecord rec = functionals(t, state);
    rec.norm_drift = pending_drift;
    if (opt.record_residual) rec.residual = coupling_residual({c}, {state});
    traj.records.push_back(rec);
    traj.norm_drift.push_back(pending_drift);
    if (opt.renormalize) pending_drift = 0.0;
  };
  sample(0);

  const auto rhs = [&](const std::vector<DenseTensor>& y) { return lt_rhs(c, y); };
  for (int step = 1; step <= steps; ++step) {
    ode::rk4_step(state, h, rhs);
    if (!ode::all_finite(state)) throw DivergenceError(static_cast<std::size_t>(step));
    if (opt.renormalize) {
      // drift is measured before the rescale, as the worst value since the
      // previous sample
      pending_drift = std::max(pending_drift, max_norm_drift(state));
      renormalize_particles(state);
    } else {
      pending_drift = max_norm_drift(state);
    }
    if (step % opt.sample_every == 0 || step == steps) sample(step);
  }
  return traj;
}

ComponentTrajectory integrate_components(const std::vector<CharacteristicSymbol>& components,
                                         const IntegrateOptions& opt) {
  std::vector<std::vector<DenseTensor>> initial;
  initial.reserve(components.size());
  for (const auto& c : components) initial.push_back(c.initial);
  return integrate_components(components, std::move(initial), opt);
}

ComponentTrajectory integrate_components(const std::vector<CharacteristicSymbol>& components,
                                         std::vector<std::vector<DenseTensor>> state,
                                         const IntegrateOptions& opt) {
  if (components.empty()) throw ShapeError("integrate_components: no components");
  const int steps = steps_for(opt);
  const double h = opt.t_end / static_cast<double>(steps);

  const auto drift_of = [&] {
    double worst = 0.0;
    for (const auto& comp : state) worst = std::max(worst, max_norm_drift(comp));
    return worst;
  };

  ComponentTrajectory traj;
  double pending_drift = drift_of();
  const auto sample = [&](int step) {
    const double t = static_cast<double>(step) * h;
    traj.times.push_back(t);
    traj.states.push_back(state);
    DiagnosticsRecord rec;
    rec.t = t;
    rec.diameter_x = ensemble_diameter(state.front());
    if (state.size() > 1) rec.diameter_u = ensemble_diameter(state[1]);
    rec.potential = potential_product(state, 1.0);
    rec.norm_drift = pending_drift;
    if (opt.record_residual) rec.residual = coupling_residual(components, state);
    traj.records.push_back(rec);
    traj.norm_drift.push_back(pending_drift);
    if (opt.renormalize) pending_drift = 0.0;
  };
  sample(0);

  const auto rhs = [&](const std::vector<std::vector<DenseTensor>>& y) {
    return weakly_coupled_rhs(components, y);
  };
  for (int step = 1; step <= steps; ++step) {
    ode::rk4_step(state, h, rhs);
    if (!ode::all_finite(state)) throw DivergenceError(static_cast<std::size_t>(step));
    if (opt.renormalize) {
      pending_drift = std::max(pending_drift, drift_of());
      for (auto& comp : state) renormalize_particles(comp);
    } else {
      pending_drift = drift_of();
    }
    if (step % opt.sample_every == 0 || step == steps) sample(step);
  }
  return traj;
}

double decomposition_check(const std::vector<CharacteristicSymbol>& components,
                           const IntegrateOptions& opt) {
  if (components.empty()) throw ShapeError("decomposition_check: no components");
  CharacteristicSymbol fused = components.front();
  for (std::size_t l = 1; l < components.size(); ++l) fused = fuse_symbols(fused, components[l]);

  const Trajectory whole = integrate_symbol(fused, opt);
  const ComponentTrajectory parts = integrate_components(components, opt);

  double worst = 0.0;
  for (std::size_t s = 0; s < whole.states.size(); ++s) {
    for (std::size_t j = 0; j < whole.states[s].size(); ++j) {
      DenseTensor prod = parts.states[s][0][j];
      for (std::size_t l = 1; l < components.size(); ++l) {
        prod = tensor_product(prod, parts.states[s][l][j]);
      }
      worst = std::max(worst, frobenius_norm(whole.states[s][j] - prod));
    }
  }
  return worst;
}

}  // namespace lohe
