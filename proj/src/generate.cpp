#include "lohe/generate.hpp"

#include <cmath>

#include "lohe/diagnostics.hpp"
#include "lohe/models.hpp"

namespace lohe {

namespace {

double quantize(double v) { return std::round(v * 256.0) / 256.0; }

RealVec normalized(RealVec x) {
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) throw GenerationError("degenerate zero vector drawn");
  for (double& v : x) v /= norm;
  return x;
}

bool vec_constraints_ok(const std::vector<RealVec>& xs, const std::optional<double>& min_align,
                        const std::optional<double>& max_diam) {
  if (min_align && vec_alignment(xs) <= *min_align) return false;
  if (max_diam && vec_diameter(xs) >= *max_diam) return false;
  return true;
}

template <class T>
bool matrix_constraints_ok(const std::vector<SquareMatrix<T>>& us,
                           const std::optional<double>& min_align,
                           const std::optional<double>& max_diam) {
  if (min_align && matrix_alignment(us) <= *min_align) return false;
  if (max_diam && matrix_diameter(us) >= *max_diam) return false;
  return true;
}

}  // namespace

std::vector<RealVec> sample_sphere(int d, int ensemble, Rng& rng, double spread,
                                   std::optional<double> min_alignment,
                                   std::optional<double> max_diameter, int budget) {
  for (int trial = 0; trial < budget; ++trial) {
    RealVec base(static_cast<std::size_t>(d), 0.0);
    if (spread > 0.0) {
      for (double& v : base) v = rng.gauss();
    }
    std::vector<RealVec> xs;
    xs.reserve(static_cast<std::size_t>(ensemble));
    for (int j = 0; j < ensemble; ++j) {
      RealVec raw(static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = (spread > 0.0 ? base[i] + spread * rng.gauss() : rng.gauss());
      }
      xs.push_back(normalized(std::move(raw)));
    }
    if (vec_constraints_ok(xs, min_alignment, max_diameter)) return xs;
  }
  throw GenerationError("sample_sphere: rejection budget exceeded");
}

std::vector<RealMatrix> sample_special_orthogonal(int n, int ensemble, Rng& rng, double spread,
                                                  std::optional<double> min_alignment,
                                                  std::optional<double> max_diameter, int budget) {
  for (int trial = 0; trial < budget; ++trial) {
    RealMatrix base(n);
    if (spread > 0.0) {
      for (double& v : base.entries()) v = rng.gauss();
    }
    std::vector<RealMatrix> us;
    us.reserve(static_cast<std::size_t>(ensemble));
    bool degenerate = false;
    for (int j = 0; j < ensemble; ++j) {
      RealMatrix raw(n);
      for (std::size_t i = 0; i < raw.entries().size(); ++i) {
        raw.entries()[i] = (spread > 0.0 ? base.entries()[i] + spread * rng.gauss() : rng.gauss());
      }
      try {
        RealMatrix q = orthonormalize(raw);
        if (determinant(q) < 0.0) {
          for (int r = 0; r < n; ++r) q(r, n - 1) = -q(r, n - 1);
        }
        us.push_back(std::move(q));
      } catch (const std::runtime_error&) {
        degenerate = true;
        break;
      }
    }
    if (degenerate) continue;
    if (matrix_constraints_ok(us, min_alignment, max_diameter)) return us;
  }
  throw GenerationError("sample_special_orthogonal: rejection budget exceeded");
}

std::vector<ComplexMatrix> sample_unitary(int n, int ensemble, Rng& rng, double spread, int budget) {
  for (int trial = 0; trial < budget; ++trial) {
    ComplexMatrix base(n);
    if (spread > 0.0) {
      for (auto& v : base.entries()) v = Complex{rng.gauss(), rng.gauss()};
    }
    std::vector<ComplexMatrix> us;
    us.reserve(static_cast<std::size_t>(ensemble));
    bool degenerate = false;
    for (int j = 0; j < ensemble; ++j) {
      ComplexMatrix raw(n);
      for (std::size_t i = 0; i < raw.entries().size(); ++i) {
        const Complex g{rng.gauss(), rng.gauss()};
        raw.entries()[i] = (spread > 0.0 ? base.entries()[i] + spread * g : g);
      }
      try {
        us.push_back(orthonormalize(raw));
      } catch (const std::runtime_error&) {
        degenerate = true;
        break;
      }
    }
    if (!degenerate) return us;
  }
  throw GenerationError("sample_unitary: rejection budget exceeded");
}

std::vector<DenseTensor> sample_unit_tensors(const SizeVector& size, int ensemble, Rng& rng,
                                             bool real) {
  std::vector<DenseTensor> out;
  out.reserve(static_cast<std::size_t>(ensemble));
  for (int j = 0; j < ensemble; ++j) {
    DenseTensor t(size);
    for (Complex& v : t.entries()) {
      v = real ? Complex{rng.gauss(), 0.0} : Complex{rng.gauss(), rng.gauss()};
    }
    const double norm = frobenius_norm(t);
    if (norm == 0.0) throw GenerationError("degenerate zero tensor drawn");
    for (Complex& v : t.entries()) v /= norm;
    out.push_back(std::move(t));
  }
  return out;
}

RealVec sample_phases(int ensemble, Rng& rng) {
  RealVec out(static_cast<std::size_t>(ensemble));
  for (double& v : out) v = 2.0 * M_PI * rng.uniform();
  return out;
}

std::vector<DenseTensor> generate_initial(const InitialSpec& spec) {
  Rng rng(spec.seed);
  std::vector<DenseTensor> out;
  switch (spec.kind) {
    case InitKind::Sphere: {
      if (spec.size.rank() != 1) throw ShapeError("sphere initial data needs a rank-1 size");
      const auto xs = sample_sphere(spec.size.dim(0), spec.ensemble, rng, spec.spread,
                                    spec.min_alignment, spec.max_diameter, spec.budget);
      for (const auto& x : xs) out.push_back(tensor_from_vec(x));
      break;
    }
    case InitKind::SpecialOrthogonal: {
      if (spec.size.rank() != 2 || spec.size.dim(0) != spec.size.dim(1)) {
        throw ShapeError("special orthogonal initial data needs a square rank-2 size");
      }
      const auto us = sample_special_orthogonal(spec.size.dim(0), spec.ensemble, rng, spec.spread,
                                                spec.min_alignment, spec.max_diameter, spec.budget);
      for (const auto& u : us) out.push_back(tensor_from_matrix(u));
      break;
    }
    case InitKind::Unitary: {
      if (spec.size.rank() != 2 || spec.size.dim(0) != spec.size.dim(1)) {
        throw ShapeError("unitary initial data needs a square rank-2 size");
      }
      const auto us = sample_unitary(spec.size.dim(0), spec.ensemble, rng, spec.spread, spec.budget);
      for (const auto& u : us) out.push_back(tensor_from_matrix(u));
      break;
    }
    case InitKind::UnitTensor: {
      auto ts = sample_unit_tensors(spec.size, spec.ensemble, rng, spec.real);
      if (spec.min_alignment || spec.max_diameter) {
        int trial = 0;
        while (!((!spec.min_alignment || ensemble_alignment(ts) > *spec.min_alignment) &&
                 (!spec.max_diameter || ensemble_diameter(ts) < *spec.max_diameter))) {
          if (++trial >= spec.budget) throw GenerationError("unit tensors: rejection budget exceeded");
          ts = sample_unit_tensors(spec.size, spec.ensemble, rng, spec.real);
        }
      }
      out = std::move(ts);
      break;
    }
    case InitKind::Phase: {
      const auto thetas = sample_phases(spec.ensemble, rng);
      for (double th : thetas) out.push_back(DenseTensor::scalar(std::exp(Complex{0.0, th})));
      break;
    }
  }
  return out;
}

RealMatrix random_skew_symmetric(int n, Rng& rng, double scale) {
  RealMatrix m(n);
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      const double v = scale * rng.gauss();
      m(r, c) = v;
      m(c, r) = -v;
    }
  }
  return m;
}

ComplexMatrix random_skew_hermitian(int n, Rng& rng, double scale) {
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    m(r, r) = Complex{0.0, scale * rng.gauss()};
    for (int c = r + 1; c < n; ++c) {
      const Complex v{scale * rng.gauss(), scale * rng.gauss()};
      m(r, c) = v;
      m(c, r) = -std::conj(v);
    }
  }
  return m;
}

ComplexMatrix random_hermitian(int n, Rng& rng, double scale) {
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    m(r, r) = Complex{scale * rng.gauss(), 0.0};
    for (int c = r + 1; c < n; ++c) {
      const Complex v{scale * rng.gauss(), scale * rng.gauss()};
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

FrequencyTensor random_block_skew_freq(const SizeVector& size, Rng& rng, double scale, bool real) {
  const auto d = size.total();
  FrequencyTensor out(size);
  for (std::size_t r = 0; r < d; ++r) {
    if (!real) out.at(r, r) = Complex{0.0, scale * rng.gauss()};
    for (std::size_t c = r + 1; c < d; ++c) {
      const Complex v = real ? Complex{scale * rng.gauss(), 0.0}
                             : Complex{scale * rng.gauss(), scale * rng.gauss()};
      out.at(r, c) = v;
      out.at(c, r) = -std::conj(v);
    }
  }
  return out;
}

CharacteristicSymbol random_symbol(const SymbolSpec& spec, Rng& rng) {
  CharacteristicSymbol c;
  c.size = spec.size;
  c.coupling = CouplingTensor(spec.size.rank());
  for (double& v : c.coupling.values()) {
    v = spec.kappa_scale * (2.0 * rng.uniform() - 1.0);
    if (spec.dyadic) v = quantize(v);
  }
  for (int j = 0; j < spec.ensemble; ++j) {
    FrequencyTensor a = random_block_skew_freq(spec.size, rng, spec.freq_scale, spec.real);
    if (spec.dyadic) {
      for (Complex& v : a.matrix()) v = Complex{quantize(v.real()), quantize(v.imag())};
    }
    c.freqs.push_back(std::move(a));
  }
  if (spec.dyadic) {
    for (int j = 0; j < spec.ensemble; ++j) {
      DenseTensor t(spec.size);
      bool nonzero = false;
      for (Complex& v : t.entries()) {
        v = Complex{quantize(rng.gauss() * 0.5), spec.real ? 0.0 : quantize(rng.gauss() * 0.5)};
        if (v != Complex{}) nonzero = true;
      }
      if (!nonzero) t[0] = Complex{1.0, 0.0};
      c.initial.push_back(std::move(t));
    }
  } else {
    c.initial = sample_unit_tensors(spec.size, spec.ensemble, rng, spec.real);
  }
  return c;
}

}  // namespace lohe
