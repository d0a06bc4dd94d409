#include "lohe/models.hpp"

#include <cmath>

namespace lohe {

namespace {

constexpr Complex kI{0.0, 1.0};

double dot(const RealVec& a, const RealVec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Complex cdot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

RealVec matvec(const RealMatrix& m, const RealVec& x) {
  RealVec out(x.size(), 0.0);
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) out[static_cast<std::size_t>(r)] += m(r, c) * x[static_cast<std::size_t>(c)];
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& z) {
  std::vector<Complex> out(z.size(), Complex{});
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) out[static_cast<std::size_t>(r)] += m(r, c) * z[static_cast<std::size_t>(c)];
  }
  return out;
}

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.n());
  for (std::size_t i = 0; i < m.entries().size(); ++i) out.entries()[i] = Complex{m.entries()[i], 0.0};
  return out;
}

template <class State, class Rhs, class Finite>
SampledRun<State> run_fixed_step(State y, double h, double t_end, int sample_every, Rhs&& rhs,
                                 Finite&& finite) {
  if (!(h > 0.0) || !(t_end > 0.0)) throw ShapeError("integrate: h and t_end must be positive");
  if (sample_every < 1) throw ShapeError("integrate: sample_every must be >= 1");
  const int steps = std::max(1, static_cast<int>(std::llround(t_end / h)));
  const double dt = t_end / static_cast<double>(steps);  // lands exactly on t_end
  SampledRun<State> out;
  out.times.push_back(0.0);
  out.states.push_back(y);
  for (int step = 1; step <= steps; ++step) {
    ode::rk4_step(y, dt, rhs);
    if (!finite(y)) throw DivergenceError(static_cast<std::size_t>(step));
    if (step % sample_every == 0 || step == steps) {
      out.times.push_back(static_cast<double>(step) * dt);
      out.states.push_back(y);
    }
  }
  return out;
}

}  // namespace

// -- Kuramoto -------------------------------------------------------------------

RealVec kuramoto_rhs(const KuramotoParams& p, const RealVec& theta) {
  const std::size_t n = theta.size();
  RealVec out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += std::sin(theta[k] - theta[j]);
    out[j] = p.nu[j] + p.kappa / static_cast<double>(n) * acc;
  }
  return out;
}

CharacteristicSymbol kuramoto_symbol(const KuramotoParams& p, const RealVec& theta0) {
  CharacteristicSymbol c;
  c.size = SizeVector{};
  c.coupling = CouplingTensor::scalar(p.kappa / 2.0);
  for (std::size_t j = 0; j < theta0.size(); ++j) {
    c.freqs.emplace_back(SizeVector{}, std::vector<Complex>{kI * p.nu[j]});
    c.initial.push_back(DenseTensor::scalar(std::exp(kI * theta0[j])));
  }
  return c;
}

// -- sphere models ----------------------------------------------------------------

std::vector<RealVec> sphere_rhs(const SphereParams& p, const std::vector<RealVec>& x) {
  const std::size_t n = x.size();
  std::vector<RealVec> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    RealVec dx = matvec(p.omega[j], x[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const double proj = dot(x[k], x[j]);
      for (std::size_t i = 0; i < dx.size(); ++i) {
        dx[i] += p.kappa / static_cast<double>(n) * (x[k][i] - proj * x[j][i]);
      }
    }
    out[j] = std::move(dx);
  }
  return out;
}

CharacteristicSymbol sphere_symbol(const SphereParams& p, const std::vector<RealVec>& x0) {
  CharacteristicSymbol c;
  c.size = SizeVector{{static_cast<int>(x0.front().size())}};
  c.coupling = CouplingTensor(1, {p.kappa, 0.0});
  for (std::size_t j = 0; j < x0.size(); ++j) {
    c.freqs.push_back(freq_from_matrix(p.omega[j]));
    c.initial.push_back(tensor_from_vec(x0[j]));
  }
  return c;
}

std::vector<std::vector<Complex>> hermitian_sphere_rhs(const HermitianSphereParams& p,
                                                       const std::vector<std::vector<Complex>>& z) {
  const std::size_t n = z.size();
  std::vector<std::vector<Complex>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> dz = matvec(p.omega[j], z[j]);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex kj = cdot(z[k], z[j]);
      const Complex jk = cdot(z[j], z[k]);
      for (std::size_t i = 0; i < dz.size(); ++i) {
        dz[i] += p.kappa0 * inv_n * (z[k][i] - kj * z[j][i]);
        dz[i] += p.kappa1 * inv_n * (jk - kj) * z[j][i];
      }
    }
    out[j] = std::move(dz);
  }
  return out;
}

CharacteristicSymbol hermitian_sphere_symbol(const HermitianSphereParams& p,
                                             const std::vector<std::vector<Complex>>& z0) {
  CharacteristicSymbol c;
  c.size = SizeVector{{static_cast<int>(z0.front().size())}};
  c.coupling = CouplingTensor(1, {p.kappa0, p.kappa1});
  for (std::size_t j = 0; j < z0.size(); ++j) {
    c.freqs.push_back(freq_from_matrix(p.omega[j]));
    c.initial.push_back(tensor_from_cvec(z0[j]));
  }
  return c;
}

DoubleSphereState double_sphere_rhs(const DoubleSphereParams& p, const DoubleSphereState& s) {
  const std::size_t n = s.u.size();
  DoubleSphereState out;
  out.u.resize(n);
  out.v.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    RealVec du = matvec(p.omega[j], s.u[j]);
    RealVec dv = matvec(p.lambda[j], s.v[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const double wv = dot(s.v[j], s.v[k]);
      const double wu = dot(s.u[j], s.u[k]);
      const double pu = dot(s.u[k], s.u[j]);
      const double pv = dot(s.v[k], s.v[j]);
      for (std::size_t i = 0; i < du.size(); ++i) {
        du[i] += p.kappa * inv_n * wv * (s.u[k][i] - pu * s.u[j][i]);
      }
      for (std::size_t i = 0; i < dv.size(); ++i) {
        dv[i] += p.kappa * inv_n * wu * (s.v[k][i] - pv * s.v[j][i]);
      }
    }
    out.u[j] = std::move(du);
    out.v[j] = std::move(dv);
  }
  return out;
}

std::vector<CharacteristicSymbol> double_sphere_symbols(const DoubleSphereParams& p,
                                                        const DoubleSphereState& s0) {
  SphereParams first{p.omega, p.kappa};
  SphereParams second{p.lambda, p.kappa};
  return {sphere_symbol(first, s0.u), sphere_symbol(second, s0.v)};
}

// -- matrix models ----------------------------------------------------------------

std::vector<ComplexMatrix> generalized_matrix_rhs(const GeneralizedMatrixParams& p,
                                                  const std::vector<ComplexMatrix>& t) {
  const std::size_t n = t.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<ComplexMatrix> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix acc = p.flow[j].left * t[j] + t[j] * transpose(p.flow[j].right);
    const ComplexMatrix tj_adj = adjoint(t[j]);
    const Complex nj = fro_inner(t[j], t[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexMatrix tk_adj = adjoint(t[k]);
      const Complex kj = fro_inner(t[k], t[j]);
      const Complex jk = fro_inner(t[j], t[k]);
      ComplexMatrix term = (p.kappa[0] * inv_n) * (nj * t[k] - kj * t[j]);
      term = term + (p.kappa[1] * inv_n) * (t[k] * tj_adj * t[j] - t[j] * tk_adj * t[j]);
      term = term + (p.kappa[2] * inv_n) * (t[j] * tj_adj * t[k] - t[j] * tk_adj * t[j]);
      term = term + (p.kappa[3] * inv_n) * ((jk - kj) * t[j]);
      acc = acc + term;
    }
    out[j] = std::move(acc);
  }
  return out;
}

CharacteristicSymbol generalized_matrix_symbol(const GeneralizedMatrixParams& p,
                                               const std::vector<ComplexMatrix>& t0) {
  CharacteristicSymbol c;
  const int d = t0.front().n();
  c.size = SizeVector{{d, d}};
  c.coupling = CouplingTensor(2, {p.kappa[0], p.kappa[1], p.kappa[2], p.kappa[3]});
  for (std::size_t j = 0; j < t0.size(); ++j) {
    c.freqs.push_back(build_rank2_freq(p.flow[j].left, p.flow[j].right));
    c.initial.push_back(tensor_from_matrix(t0[j]));
  }
  return c;
}

std::vector<ComplexMatrix> lohe_matrix_rhs(const LoheMatrixParams& p,
                                           const std::vector<ComplexMatrix>& u) {
  const std::size_t n = u.size();
  const double inv_2n = 1.0 / (2.0 * static_cast<double>(n));
  std::vector<ComplexMatrix> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix acc = (-kI) * (p.h[j] * u[j]);
    const ComplexMatrix uj_adj = adjoint(u[j]);
    for (std::size_t k = 0; k < n; ++k) {
      acc = acc + (p.kappa * inv_2n) * (u[k] * uj_adj * u[j] - u[j] * adjoint(u[k]) * u[j]);
    }
    out[j] = std::move(acc);
  }
  return out;
}

CharacteristicSymbol lohe_matrix_symbol(const LoheMatrixParams& p,
                                        const std::vector<ComplexMatrix>& u0) {
  // On unitary data the two off-diagonal patterns act identically, so the
  // kappa/2 total is split evenly between them. Initial data stay on U(d),
  // with Frobenius norm sqrt(d); the strengths are calibrated to that scale.
  CharacteristicSymbol c;
  const int d = u0.front().n();
  c.size = SizeVector{{d, d}};
  c.coupling = CouplingTensor(2, {0.0, p.kappa / 4.0, p.kappa / 4.0, 0.0});
  const ComplexMatrix zero(d);
  for (std::size_t j = 0; j < u0.size(); ++j) {
    c.freqs.push_back(build_rank2_freq((-kI) * p.h[j], zero));
    c.initial.push_back(tensor_from_matrix(u0[j]));
  }
  return c;
}

DoubleMatrixState double_matrix_rhs(const DoubleMatrixParams& p, const DoubleMatrixState& s) {
  const std::size_t n = s.u.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  DoubleMatrixState out;
  out.u.resize(n);
  out.v.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix du = (-kI) * (p.h[j] * s.u[j]);
    ComplexMatrix dv = (-kI) * (p.g[j] * s.v[j]);
    const ComplexMatrix uj_adj = adjoint(s.u[j]);
    const ComplexMatrix vj_adj = adjoint(s.v[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex wv = fro_inner(s.v[j], s.v[k]);
      const Complex wu = fro_inner(s.u[j], s.u[k]);
      du = du + (p.kappa * inv_n) *
                    (wv * (s.u[k] * uj_adj * s.u[j]) - std::conj(wv) * (s.u[j] * adjoint(s.u[k]) * s.u[j]));
      dv = dv + (p.kappa * inv_n) *
                    (wu * (s.v[k] * vj_adj * s.v[j]) - std::conj(wu) * (s.v[j] * adjoint(s.v[k]) * s.v[j]));
    }
    out.u[j] = std::move(du);
    out.v[j] = std::move(dv);
  }
  return out;
}

std::vector<CharacteristicSymbol> double_matrix_symbols(const DoubleMatrixParams& p,
                                                        const DoubleMatrixState& s0) {
  const int d1 = s0.u.front().n();
  const int d2 = s0.v.front().n();
  CharacteristicSymbol c1, c2;
  c1.size = SizeVector{{d1, d1}};
  c2.size = SizeVector{{d2, d2}};
  c1.coupling = CouplingTensor(2, {0.0, p.kappa / 2.0, p.kappa / 2.0, 0.0});
  c2.coupling = CouplingTensor(2, {0.0, p.kappa / 2.0, p.kappa / 2.0, 0.0});
  for (std::size_t j = 0; j < s0.u.size(); ++j) {
    c1.freqs.push_back(build_rank2_freq((-kI) * p.h[j], ComplexMatrix(d1)));
    c2.freqs.push_back(build_rank2_freq((-kI) * p.g[j], ComplexMatrix(d2)));
    c1.initial.push_back(tensor_from_matrix(s0.u[j]));
    c2.initial.push_back(tensor_from_matrix(s0.v[j]));
  }
  return {c1, c2};
}

// -- mixed-rank couplings ----------------------------------------------------------

KuramotoSphereState kuramoto_sphere_rhs(const KuramotoSphereParams& p, const KuramotoSphereState& s) {
  const std::size_t n = s.theta.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  KuramotoSphereState out;
  out.theta.resize(n);
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double dtheta = p.nu[j];
    RealVec dx = matvec(p.omega[j], s.x[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const double xx = dot(s.x[j], s.x[k]);
      dtheta += p.kappa_theta * inv_n * xx * std::sin(s.theta[k] - s.theta[j]);
      const double c = std::cos(s.theta[k] - s.theta[j]);
      for (std::size_t i = 0; i < dx.size(); ++i) {
        dx[i] += p.kappa_x * inv_n * c * (s.x[k][i] - xx * s.x[j][i]);
      }
    }
    out.theta[j] = dtheta;
    out.x[j] = std::move(dx);
  }
  return out;
}

std::vector<CharacteristicSymbol> kuramoto_sphere_symbols(const KuramotoSphereParams& p,
                                                          const KuramotoSphereState& s0) {
  CharacteristicSymbol phase;
  phase.size = SizeVector{{2}};
  phase.coupling = CouplingTensor(1, {p.kappa_theta, 0.0});
  for (std::size_t j = 0; j < s0.theta.size(); ++j) {
    RealMatrix rot(2);
    rot(0, 1) = -p.nu[j];
    rot(1, 0) = p.nu[j];
    phase.freqs.push_back(freq_from_matrix(rot));
    phase.initial.push_back(tensor_from_vec({std::cos(s0.theta[j]), std::sin(s0.theta[j])}));
  }
  SphereParams sphere{p.omega, p.kappa_x};
  return {phase, sphere_symbol(sphere, s0.x)};
}

SphereSOState sphere_so_rhs(const SphereSOParams& p, const SphereSOState& s) {
  const std::size_t n = s.x.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  SphereSOState out;
  out.x.resize(n);
  out.u.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    RealVec dx = matvec(p.omega[j], s.x[j]);
    RealMatrix du = p.a[j] * s.u[j];
    for (std::size_t k = 0; k < n; ++k) {
      const double g = fro_inner(s.u[j], s.u[k]);
      const double xx = dot(s.x[k], s.x[j]);
      for (std::size_t i = 0; i < dx.size(); ++i) {
        dx[i] += p.kappa * inv_n * g * (s.x[k][i] - xx * s.x[j][i]);
      }
      du = du + (p.kappa * inv_n / 2.0 * xx) * (s.u[k] - s.u[j] * transpose(s.u[k]) * s.u[j]);
    }
    out.x[j] = std::move(dx);
    out.u[j] = std::move(du);
  }
  return out;
}

std::vector<CharacteristicSymbol> sphere_so_symbols(const SphereSOParams& p, const SphereSOState& s0) {
  SphereParams sphere{p.omega, p.kappa};
  CharacteristicSymbol matrix;
  const int n = s0.u.front().n();
  matrix.size = SizeVector{{n, n}};
  matrix.coupling = CouplingTensor(2, {0.0, p.kappa / 4.0, p.kappa / 4.0, 0.0});
  for (std::size_t j = 0; j < s0.u.size(); ++j) {
    matrix.freqs.push_back(build_rank2_freq(p.a[j], RealMatrix(n)));
    matrix.initial.push_back(tensor_from_matrix(s0.u[j]));
  }
  return {sphere_symbol(sphere, s0.x), matrix};
}

// -- Pauli parametrization ----------------------------------------------------------

ComplexMatrix pauli_encode(const PauliCoordinates& p) {
  const Complex phase = std::exp(-kI * p.theta);
  ComplexMatrix u(2);
  u(0, 0) = phase * Complex{p.x[3], p.x[2]};
  u(0, 1) = phase * Complex{p.x[1], p.x[0]};
  u(1, 0) = phase * Complex{-p.x[1], p.x[0]};
  u(1, 1) = phase * Complex{p.x[3], -p.x[2]};
  return u;
}

PauliCoordinates pauli_normalize(PauliCoordinates p) {
  int dominant = 3;
  for (int i = 2; i >= 0; --i) {
    if (std::abs(p.x[static_cast<std::size_t>(i)]) > std::abs(p.x[static_cast<std::size_t>(dominant)])) {
      dominant = i;
    }
  }
  if (p.x[static_cast<std::size_t>(dominant)] < 0.0) {
    p.theta += M_PI;
    for (double& v : p.x) v = -v;
  }
  while (p.theta > M_PI) p.theta -= 2.0 * M_PI;
  while (p.theta <= -M_PI) p.theta += 2.0 * M_PI;
  return p;
}

PauliCoordinates pauli_decode(const ComplexMatrix& u) {
  if (u.n() != 2) throw ValidationError("pauli_decode: expected a 2x2 matrix");
  if (fro_norm(adjoint(u) * u - ComplexMatrix::identity(2)) > 1e-8) {
    throw ValidationError("pauli_decode: input is not unitary");
  }
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  double theta = -std::arg(det) / 2.0;  // in [-pi/2, pi/2)
  if (theta <= -M_PI / 2.0) theta += M_PI;
  const Complex phase = std::exp(kI * theta);
  PauliCoordinates p;
  p.theta = theta;
  p.x[3] = (phase * u(0, 0)).real();
  p.x[2] = (phase * u(0, 0)).imag();
  p.x[1] = (phase * u(0, 1)).real();
  p.x[0] = (phase * u(0, 1)).imag();
  return pauli_normalize(p);
}

ComplexMatrix pauli_hamiltonian(const PauliFrequency& f) {
  ComplexMatrix h(2);
  h(0, 0) = Complex{f.omega[2] + f.nu, 0.0};
  h(0, 1) = Complex{f.omega[0], -f.omega[1]};
  h(1, 0) = Complex{f.omega[0], f.omega[1]};
  h(1, 1) = Complex{-f.omega[2] + f.nu, 0.0};
  return h;
}

RealMatrix omega_matrix(const std::array<double, 3>& w) {
  RealMatrix m(4);
  m(0, 1) = -w[2];
  m(0, 2) = w[1];
  m(0, 3) = -w[0];
  m(1, 0) = w[2];
  m(1, 2) = -w[0];
  m(1, 3) = -w[1];
  m(2, 0) = -w[1];
  m(2, 1) = w[0];
  m(2, 3) = -w[2];
  m(3, 0) = w[0];
  m(3, 1) = w[1];
  m(3, 2) = w[2];
  return m;
}

// -- frequency construction -----------------------------------------------------------

FrequencyTensor freq_from_matrix(const ComplexMatrix& m) {
  return FrequencyTensor(SizeVector{{m.n()}}, m.entries());
}

FrequencyTensor freq_from_matrix(const RealMatrix& m) { return freq_from_matrix(to_complex(m)); }

FrequencyTensor build_rank2_freq(const ComplexMatrix& left, const ComplexMatrix& right) {
  const int d1 = left.n();
  const int d2 = right.n();
  FrequencyTensor out(SizeVector{{d1, d2}});
  const auto d2s = static_cast<std::size_t>(d2);
  for (int b0 = 0; b0 < d1; ++b0) {
    for (int g0 = 0; g0 < d2; ++g0) {
      const std::size_t row = static_cast<std::size_t>(b0) * d2s + static_cast<std::size_t>(g0);
      for (int b1 = 0; b1 < d1; ++b1) {
        for (int g1 = 0; g1 < d2; ++g1) {
          Complex v{};
          if (g0 == g1) v += left(b0, b1);
          if (b0 == b1) v += right(g0, g1);
          out.at(row, static_cast<std::size_t>(b1) * d2s + static_cast<std::size_t>(g1)) = v;
        }
      }
    }
  }
  return out;
}

FrequencyTensor build_rank2_freq(const RealMatrix& left, const RealMatrix& right) {
  return build_rank2_freq(to_complex(left), to_complex(right));
}

// -- conversions -----------------------------------------------------------------------

DenseTensor tensor_from_vec(const RealVec& x) {
  std::vector<Complex> entries(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) entries[i] = Complex{x[i], 0.0};
  return DenseTensor(SizeVector{{static_cast<int>(x.size())}}, std::move(entries));
}

DenseTensor tensor_from_cvec(const std::vector<Complex>& z) {
  return DenseTensor(SizeVector{{static_cast<int>(z.size())}}, z);
}

DenseTensor tensor_from_matrix(const ComplexMatrix& m) {
  return DenseTensor(SizeVector{{m.n(), m.n()}}, m.entries());
}

DenseTensor tensor_from_matrix(const RealMatrix& m) { return tensor_from_matrix(to_complex(m)); }

ComplexMatrix matrix_from_tensor(const DenseTensor& t) {
  if (t.rank() != 2 || t.size().dim(0) != t.size().dim(1)) {
    throw ShapeError("matrix_from_tensor: expected a square rank-2 tensor");
  }
  return ComplexMatrix(t.size().dim(0), t.entries());
}

RealVec vec_from_tensor(const DenseTensor& t) {
  RealVec out(t.total());
  for (std::size_t i = 0; i < t.total(); ++i) out[i] = t[i].real();
  return out;
}

// -- integration helpers ------------------------------------------------------------------

void axpy(std::vector<ComplexMatrix>& y, double c, const std::vector<ComplexMatrix>& k) {
  for (std::size_t j = 0; j < y.size(); ++j) ode::axpy(y[j].entries(), c, k[j].entries());
}

void axpy(std::vector<RealMatrix>& y, double c, const std::vector<RealMatrix>& k) {
  for (std::size_t j = 0; j < y.size(); ++j) ode::axpy(y[j].entries(), c, k[j].entries());
}

void axpy(DoubleSphereState& y, double c, const DoubleSphereState& k) {
  ode::axpy(y.u, c, k.u);
  ode::axpy(y.v, c, k.v);
}

void axpy(DoubleMatrixState& y, double c, const DoubleMatrixState& k) {
  axpy(y.u, c, k.u);
  axpy(y.v, c, k.v);
}

void axpy(KuramotoSphereState& y, double c, const KuramotoSphereState& k) {
  ode::axpy(y.theta, c, k.theta);
  ode::axpy(y.x, c, k.x);
}

void axpy(SphereSOState& y, double c, const SphereSOState& k) {
  ode::axpy(y.x, c, k.x);
  axpy(y.u, c, k.u);
}

bool state_finite(const DoubleSphereState& y) { return ode::all_finite(y.u) && ode::all_finite(y.v); }

bool state_finite(const DoubleMatrixState& y) {
  for (const auto& m : y.u) {
    if (!ode::all_finite(m.entries())) return false;
  }
  for (const auto& m : y.v) {
    if (!ode::all_finite(m.entries())) return false;
  }
  return true;
}

bool state_finite(const KuramotoSphereState& y) {
  return ode::all_finite(y.theta) && ode::all_finite(y.x);
}

bool state_finite(const SphereSOState& y) {
  if (!ode::all_finite(y.x)) return false;
  for (const auto& m : y.u) {
    if (!ode::all_finite(m.entries())) return false;
  }
  return true;
}

SampledRun<RealVec> integrate_kuramoto(const KuramotoParams& p, RealVec theta0, double h,
                                       double t_end, int sample_every) {
  return run_fixed_step(
      std::move(theta0), h, t_end, sample_every, [&](const RealVec& y) { return kuramoto_rhs(p, y); },
      [](const RealVec& y) { return ode::all_finite(y); });
}

SampledRun<std::vector<RealVec>> integrate_sphere(const SphereParams& p, std::vector<RealVec> x0,
                                                  double h, double t_end, int sample_every) {
  return run_fixed_step(
      std::move(x0), h, t_end, sample_every,
      [&](const std::vector<RealVec>& y) { return sphere_rhs(p, y); },
      [](const std::vector<RealVec>& y) { return ode::all_finite(y); });
}

SampledRun<DoubleSphereState> integrate_double_sphere(const DoubleSphereParams& p,
                                                      DoubleSphereState s0, double h, double t_end,
                                                      int sample_every) {
  return run_fixed_step(
      std::move(s0), h, t_end, sample_every,
      [&](const DoubleSphereState& y) { return double_sphere_rhs(p, y); },
      [](const DoubleSphereState& y) { return state_finite(y); });
}

SampledRun<std::vector<ComplexMatrix>> integrate_lohe_matrix(const LoheMatrixParams& p,
                                                             std::vector<ComplexMatrix> u0, double h,
                                                             double t_end, int sample_every) {
  return run_fixed_step(
      std::move(u0), h, t_end, sample_every,
      [&](const std::vector<ComplexMatrix>& y) { return lohe_matrix_rhs(p, y); },
      [](const std::vector<ComplexMatrix>& y) {
        for (const auto& m : y) {
          if (!ode::all_finite(m.entries())) return false;
        }
        return true;
      });
}

SampledRun<KuramotoSphereState> integrate_kuramoto_sphere(const KuramotoSphereParams& p,
                                                          KuramotoSphereState s0, double h,
                                                          double t_end, int sample_every) {
  return run_fixed_step(
      std::move(s0), h, t_end, sample_every,
      [&](const KuramotoSphereState& y) { return kuramoto_sphere_rhs(p, y); },
      [](const KuramotoSphereState& y) { return state_finite(y); });
}

SampledRun<SphereSOState> integrate_sphere_so(const SphereSOParams& p, SphereSOState s0, double h,
                                              double t_end, int sample_every) {
  return run_fixed_step(
      std::move(s0), h, t_end, sample_every,
      [&](const SphereSOState& y) { return sphere_so_rhs(p, y); },
      [](const SphereSOState& y) { return state_finite(y); });
}

}  // namespace lohe
