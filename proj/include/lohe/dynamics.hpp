#pragma once

#include <cstddef>
#include <vector>

#include "lohe/diagnostics.hpp"
#include "lohe/symbol.hpp"
#include "lohe/tensor.hpp"

namespace lohe {

struct DivergenceError : std::runtime_error {
  std::size_t step;
  explicit DivergenceError(std::size_t at)
      : std::runtime_error("non-finite state at step " + std::to_string(at)), step(at) {}
};

struct EnsembleState {
  double t = 0.0;
  std::vector<DenseTensor> tensors;
};

struct ComponentStates {
  double t = 0.0;
  std::vector<std::vector<DenseTensor>> components;  // [component][particle]
};

struct IntegrateOptions {
  double h = 1e-3;
  double t_end = 1.0;
  int sample_every = 100;        // record every k-th step plus the final one
  bool renormalize = false;      // rescale every particle to unit norm after each step
  bool record_residual = false;  // per-sample coupling residual (extra cost)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<DenseTensor>> states;
  std::vector<DiagnosticsRecord> records;
  std::vector<double> norm_drift;
};

struct ComponentTrajectory {
  std::vector<double> times;
  std::vector<std::vector<std::vector<DenseTensor>>> states;  // [sample][component][particle]
  std::vector<DiagnosticsRecord> records;
  std::vector<double> norm_drift;
};

/// dT_j = A_j T_j + sum over patterns of coupling_increment with the ensemble
/// mean; exact mean-field rewrite of the pairwise sum.
std::vector<DenseTensor> lt_rhs(const CharacteristicSymbol& c, const std::vector<DenseTensor>& state);
std::vector<DenseTensor> lt_rhs(const CharacteristicSymbol& c, const EnsembleState& state);

/// Literal pairwise double sum; test oracle for the mean-field form.
std::vector<DenseTensor> lt_rhs_pairwise(const CharacteristicSymbol& c,
                                         const std::vector<DenseTensor>& state);

/// Per-component derivatives of the weakly coupled system: each component's
/// own coupling terms, weighted per pair by the product of the other
/// components' Frobenius inner products.
std::vector<std::vector<DenseTensor>> weakly_coupled_rhs(
    const std::vector<CharacteristicSymbol>& components,
    const std::vector<std::vector<DenseTensor>>& states);
std::vector<std::vector<DenseTensor>> weakly_coupled_rhs(
    const std::vector<CharacteristicSymbol>& components, const ComponentStates& states);

Trajectory integrate_symbol(const CharacteristicSymbol& c, const IntegrateOptions& opt);
Trajectory integrate_symbol(const CharacteristicSymbol& c, std::vector<DenseTensor> initial,
                            const IntegrateOptions& opt);

ComponentTrajectory integrate_components(const std::vector<CharacteristicSymbol>& components,
                                         const IntegrateOptions& opt);
ComponentTrajectory integrate_components(const std::vector<CharacteristicSymbol>& components,
                                         std::vector<std::vector<DenseTensor>> initial,
                                         const IntegrateOptions& opt);

/// Integrates the fused problem and the component system from the same data
/// and returns the max over samples and particles of
/// ||T_j(t) - tensor product of the component states||_F.
double decomposition_check(const std::vector<CharacteristicSymbol>& components,
                           const IntegrateOptions& opt);

}  // namespace lohe
