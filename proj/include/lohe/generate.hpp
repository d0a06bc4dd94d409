#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "lohe/matrix.hpp"
#include "lohe/tensor.hpp"
#include "lohe/symbol.hpp"

namespace lohe {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::mt19937_64 eng;

  double gauss() { return std::normal_distribution<double>{0.0, 1.0}(eng); }
  double uniform() { return std::uniform_real_distribution<double>{0.0, 1.0}(eng); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(eng); }
};

enum class InitKind { Sphere, Unitary, SpecialOrthogonal, UnitTensor, Phase };

/// Deterministic initial-data generator. `spread` <= 0 draws members
/// independently; a positive spread clusters them around a shared random base
/// point, which keeps rejection sampling for tight constraints feasible. The
/// constraints are re-checked on every candidate ensemble and the whole
/// ensemble is redrawn until they hold or the budget runs out.
struct InitialSpec {
  InitKind kind = InitKind::UnitTensor;
  SizeVector size;  // (d) for Sphere, (n, n) for matrix kinds, any for UnitTensor
  int ensemble = 1;
  std::uint64_t seed = 0;
  double spread = 0.0;
  std::optional<double> min_alignment;  // A(X0) > c
  std::optional<double> max_diameter;   // D(X0) < c
  int budget = 100000;
  bool real = false;  // UnitTensor only
};

std::vector<DenseTensor> generate_initial(const InitialSpec& spec);

std::vector<RealVec> sample_sphere(int d, int ensemble, Rng& rng, double spread = 0.0,
                                   std::optional<double> min_alignment = std::nullopt,
                                   std::optional<double> max_diameter = std::nullopt,
                                   int budget = 100000);
std::vector<RealMatrix> sample_special_orthogonal(int n, int ensemble, Rng& rng, double spread = 0.0,
                                                  std::optional<double> min_alignment = std::nullopt,
                                                  std::optional<double> max_diameter = std::nullopt,
                                                  int budget = 100000);
std::vector<ComplexMatrix> sample_unitary(int n, int ensemble, Rng& rng, double spread = 0.0,
                                          int budget = 100000);
std::vector<DenseTensor> sample_unit_tensors(const SizeVector& size, int ensemble, Rng& rng,
                                             bool real = false);
RealVec sample_phases(int ensemble, Rng& rng);

RealMatrix random_skew_symmetric(int n, Rng& rng, double scale);
ComplexMatrix random_skew_hermitian(int n, Rng& rng, double scale);
ComplexMatrix random_hermitian(int n, Rng& rng, double scale);
FrequencyTensor random_block_skew_freq(const SizeVector& size, Rng& rng, double scale,
                                       bool real = false);

/// Random valid characteristic symbol (skew-Hermitian frequencies, unit-norm
/// initial data). With `dyadic` set, every stored value is drawn on a coarse
/// power-of-two grid and initial tensors are left unnormalized, so that the
/// copies, sums, and entry products performed by fusion are exact in double
/// precision.
struct SymbolSpec {
  SizeVector size;
  int ensemble = 3;
  double kappa_scale = 1.0;
  double freq_scale = 1.0;
  bool real = false;
  bool dyadic = false;
};

CharacteristicSymbol random_symbol(const SymbolSpec& spec, Rng& rng);

}  // namespace lohe
