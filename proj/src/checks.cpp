#include "lohe/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "lohe/diagnostics.hpp"
#include "lohe/dynamics.hpp"
#include "lohe/generate.hpp"
#include "lohe/models.hpp"

namespace lohe {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CheckLine line(std::string name, bool passed, std::string detail) {
  return CheckLine{std::move(name), passed, std::move(detail)};
}

SymbolSpec random_shape_spec(Rng& rng, int ensemble, bool dyadic) {
  SymbolSpec spec;
  const int rank = rng.pick(0, 2);
  std::vector<int> dims;
  for (int i = 0; i < rank; ++i) dims.push_back(rng.pick(2, 3));
  spec.size = SizeVector{dims};
  spec.ensemble = ensemble;
  spec.dyadic = dyadic;
  return spec;
}

std::vector<RealMatrix> skew_family(int count, int n, Rng& rng, double scale, bool common) {
  std::vector<RealMatrix> out;
  const RealMatrix base = random_skew_symmetric(n, rng, scale);
  for (int j = 0; j < count; ++j) out.push_back(common ? base : random_skew_symmetric(n, rng, scale));
  return out;
}

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double tensor_gap(const DenseTensor& a, const DenseTensor& b) { return frobenius_norm(a - b); }

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed; });
}

// -- criterion 1 ---------------------------------------------------------------

std::vector<CheckLine> check_monoid_laws(std::uint64_t seed) {
  Rng rng(seed);
  const auto start = Clock::now();
  int assoc_fail = 0;
  int ident_fail = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const int ensemble = rng.pick(1, 4);
    const CharacteristicSymbol c1 = random_symbol(random_shape_spec(rng, ensemble, true), rng);
    const CharacteristicSymbol c2 = random_symbol(random_shape_spec(rng, ensemble, true), rng);
    const CharacteristicSymbol c3 = random_symbol(random_shape_spec(rng, ensemble, true), rng);
    if (!symbols_equal(fuse_symbols(fuse_symbols(c1, c2), c3),
                       fuse_symbols(c1, fuse_symbols(c2, c3)))) {
      ++assoc_fail;
    }
    const CharacteristicSymbol e = identity_symbol(ensemble);
    if (!symbols_equal(fuse_symbols(e, c1), c1) || !symbols_equal(fuse_symbols(c1, e), c1)) {
      ++ident_fail;
    }
  }
  const double elapsed = seconds_since(start);
  return {
      line("monoid associativity, 1000 random triples, exact", assoc_fail == 0,
           std::to_string(assoc_fail) + " failures"),
      line("monoid identity laws, both sides, exact", ident_fail == 0,
           std::to_string(ident_fail) + " failures"),
      line("monoid suite runtime < 5 s", elapsed < 5.0, fmt(elapsed) + " s"),
  };
}

// -- criterion 2 ---------------------------------------------------------------

std::vector<CheckLine> check_commutativity(std::uint64_t seed) {
  Rng rng(seed);
  int fail = 0;
  for (int t = 0; t < 200; ++t) {
    const int ensemble = rng.pick(1, 4);
    const CharacteristicSymbol c1 = random_symbol(random_shape_spec(rng, ensemble, false), rng);
    const CharacteristicSymbol c2 = random_symbol(random_shape_spec(rng, ensemble, false), rng);
    const Permutation swap = Permutation::block_swap(c1.rank(), c2.rank());
    if (!symbols_equal(shuffle_symbol(fuse_symbols(c1, c2), swap), fuse_symbols(c2, c1))) ++fail;
  }
  return {line("commutativity up to block-swap shuffle, 200 random pairs, exact", fail == 0,
               std::to_string(fail) + " failures")};
}

// -- criterion 3 ---------------------------------------------------------------

std::vector<CheckLine> check_conservation(std::uint64_t seed) {
  Rng rng(seed);
  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 10.0;
  opt.sample_every = 200;
  double worst = 0.0;
  const std::vector<std::vector<int>> shapes = {{}, {3}, {2}, {2, 3}, {3, 3}, {2, 2}};
  for (const auto& dims : shapes) {
    SymbolSpec spec;
    spec.size = SizeVector{dims};
    spec.ensemble = 4;
    const CharacteristicSymbol c = random_symbol(spec, rng);
    const Trajectory traj = integrate_symbol(c, opt);
    for (double d : traj.norm_drift) worst = std::max(worst, d);
  }
  return {line("norm conservation drift <= 1e-8 over t in [0,10], h=1e-3", worst <= 1e-8,
               "max drift " + fmt(worst))};
}

// -- criterion 4 ---------------------------------------------------------------

std::vector<CheckLine> check_decomposition(std::uint64_t seed) {
  Rng rng(seed);
  const auto start = Clock::now();
  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 5.0;
  opt.sample_every = 100;

  const auto make = [&](std::vector<int> dims) {
    SymbolSpec spec;
    spec.size = SizeVector{std::move(dims)};
    spec.ensemble = 3;
    return random_symbol(spec, rng);
  };

  std::vector<CheckLine> lines;
  const auto run_case = [&](const std::string& label, const std::vector<CharacteristicSymbol>& comps) {
    const double dev = decomposition_check(comps, opt);
    lines.push_back(line("decomposition " + label + " deviation <= 1e-6", dev <= 1e-6, fmt(dev)));
  };
  run_case("rank-0 * rank-0", {make({}), make({})});
  run_case("rank-1 d=2 * rank-1 d=3", {make({2}), make({3})});
  run_case("rank-1 d=2 * rank-2 2x2", {make({2}), make({2, 2})});
  run_case("triple rank-0 * rank-1 * rank-1", {make({}), make({2}), make({3})});
  const double elapsed = seconds_since(start);
  lines.push_back(line("decomposition runtime < 60 s", elapsed < 60.0, fmt(elapsed) + " s"));
  return lines;
}

// -- criterion 5 ---------------------------------------------------------------

std::vector<CheckLine> check_permutation_equivariance(std::uint64_t seed) {
  Rng rng(seed);
  SymbolSpec spec;
  spec.size = SizeVector{{2, 2, 3}};
  spec.ensemble = 3;
  const CharacteristicSymbol c = random_symbol(spec, rng);
  const Permutation sigma{{2, 0, 1}};  // axis order (3,1,2)

  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 5.0;
  opt.sample_every = 100;
  const Trajectory base = integrate_symbol(c, opt);
  const Trajectory shuffled = integrate_symbol(shuffle_symbol(c, sigma), opt);

  double worst = 0.0;
  for (std::size_t s = 0; s < base.states.size(); ++s) {
    for (std::size_t j = 0; j < base.states[s].size(); ++j) {
      worst = std::max(worst, tensor_gap(shuffle(base.states[s][j], sigma), shuffled.states[s][j]));
    }
  }
  return {line("permutation equivariance (2x2x3, sigma=(3,1,2)) within 1e-8", worst <= 1e-8,
               "max gap " + fmt(worst))};
}

// -- criterion 6 ---------------------------------------------------------------

namespace {

double kuramoto_reduction_gap(Rng& rng) {
  const int n = 5;
  KuramotoParams p;
  for (int j = 0; j < n; ++j) p.nu.push_back(rng.gauss());
  p.kappa = 1.3;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RealVec theta;
    for (int j = 0; j < n; ++j) theta.push_back(2.0 * M_PI * rng.uniform());
    const CharacteristicSymbol sym = kuramoto_symbol(p, theta);
    std::vector<DenseTensor> z;
    for (int j = 0; j < n; ++j) z.push_back(DenseTensor::scalar(std::exp(Complex{0.0, theta[static_cast<std::size_t>(j)]})));
    const auto dz = lt_rhs(sym, z);
    const RealVec direct = kuramoto_rhs(p, theta);
    for (int j = 0; j < n; ++j) {
      const Complex zc = z[static_cast<std::size_t>(j)][0];
      const double via_symbol = (std::conj(zc) * dz[static_cast<std::size_t>(j)][0]).imag();
      worst = std::max(worst, std::abs(via_symbol - direct[static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double hermitian_sphere_reduction_gap(Rng& rng) {
  const int n = 4, d = 3;
  HermitianSphereParams p;
  p.kappa0 = 0.8;
  p.kappa1 = 0.6;
  for (int j = 0; j < n; ++j) p.omega.push_back(random_skew_hermitian(d, rng, 1.0));
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<Complex>> z;
    const auto ts = sample_unit_tensors(SizeVector{{d}}, n, rng, false);
    for (const auto& t : ts) z.push_back(t.entries());
    const CharacteristicSymbol sym = hermitian_sphere_symbol(p, z);
    const auto dz_sym = lt_rhs(sym, ts);
    const auto dz = hermitian_sphere_rhs(p, z);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_cvec(dz[static_cast<std::size_t>(j)]),
                                         dz_sym[static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double sphere_reduction_gap(Rng& rng) {
  const int n = 4, d = 4;
  SphereParams p;
  p.kappa = 1.1;
  for (int j = 0; j < n; ++j) p.omega.push_back(random_skew_symmetric(d, rng, 1.0));
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = sample_sphere(d, n, rng);
    const CharacteristicSymbol sym = sphere_symbol(p, xs);
    std::vector<DenseTensor> state;
    for (const auto& x : xs) state.push_back(tensor_from_vec(x));
    const auto dx_sym = lt_rhs(sym, state);
    const auto dx = sphere_rhs(p, xs);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_vec(dx[static_cast<std::size_t>(j)]),
                                         dx_sym[static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double generalized_matrix_reduction_gap(Rng& rng) {
  const int n = 3, d = 2;
  GeneralizedMatrixParams p;
  p.kappa = {0.5, 0.7, 0.9, 0.3};
  for (int j = 0; j < n; ++j) {
    p.flow.push_back({random_skew_hermitian(d, rng, 1.0), random_skew_hermitian(d, rng, 1.0)});
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ComplexMatrix> t;
    for (int j = 0; j < n; ++j) {
      ComplexMatrix m(d);
      for (auto& v : m.entries()) v = Complex{rng.gauss(), rng.gauss()};
      t.push_back(std::move(m));
    }
    const CharacteristicSymbol sym = generalized_matrix_symbol(p, t);
    std::vector<DenseTensor> state;
    for (const auto& m : t) state.push_back(tensor_from_matrix(m));
    const auto dt_sym = lt_rhs(sym, state);
    const auto dt = generalized_matrix_rhs(p, t);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_matrix(dt[static_cast<std::size_t>(j)]),
                                         dt_sym[static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double lohe_matrix_reduction_gap(Rng& rng) {
  const int n = 3, d = 3;
  LoheMatrixParams p;
  p.kappa = 1.2;
  for (int j = 0; j < n; ++j) p.h.push_back(random_hermitian(d, rng, 1.0));
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = sample_unitary(d, n, rng);
    const CharacteristicSymbol sym = lohe_matrix_symbol(p, u);
    std::vector<DenseTensor> state;
    for (const auto& m : u) state.push_back(tensor_from_matrix(m));
    const auto du_sym = lt_rhs(sym, state);
    const auto du = lohe_matrix_rhs(p, u);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_matrix(du[static_cast<std::size_t>(j)]),
                                         du_sym[static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double double_sphere_reduction_gap(Rng& rng) {
  const int n = 3, d1 = 3, d2 = 2;
  DoubleSphereParams p;
  p.kappa = 0.9;
  for (int j = 0; j < n; ++j) {
    p.omega.push_back(random_skew_symmetric(d1, rng, 1.0));
    p.lambda.push_back(random_skew_symmetric(d2, rng, 1.0));
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    DoubleSphereState s{sample_sphere(d1, n, rng), sample_sphere(d2, n, rng)};
    const auto syms = double_sphere_symbols(p, s);
    std::vector<std::vector<DenseTensor>> state(2);
    for (const auto& x : s.u) state[0].push_back(tensor_from_vec(x));
    for (const auto& x : s.v) state[1].push_back(tensor_from_vec(x));
    const auto d_sym = weakly_coupled_rhs(syms, state);
    const auto ds = double_sphere_rhs(p, s);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_vec(ds.u[static_cast<std::size_t>(j)]),
                                         d_sym[0][static_cast<std::size_t>(j)]));
      worst = std::max(worst, tensor_gap(tensor_from_vec(ds.v[static_cast<std::size_t>(j)]),
                                         d_sym[1][static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double double_matrix_reduction_gap(Rng& rng) {
  const int n = 3, d1 = 2, d2 = 2;
  DoubleMatrixParams p;
  p.kappa = 0.8;
  for (int j = 0; j < n; ++j) {
    p.h.push_back(random_hermitian(d1, rng, 1.0));
    p.g.push_back(random_hermitian(d2, rng, 1.0));
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    DoubleMatrixState s{sample_unitary(d1, n, rng), sample_unitary(d2, n, rng)};
    const auto syms = double_matrix_symbols(p, s);
    std::vector<std::vector<DenseTensor>> state(2);
    for (const auto& m : s.u) state[0].push_back(tensor_from_matrix(m));
    for (const auto& m : s.v) state[1].push_back(tensor_from_matrix(m));
    const auto d_sym = weakly_coupled_rhs(syms, state);
    const auto ds = double_matrix_rhs(p, s);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_matrix(ds.u[static_cast<std::size_t>(j)]),
                                         d_sym[0][static_cast<std::size_t>(j)]));
      worst = std::max(worst, tensor_gap(tensor_from_matrix(ds.v[static_cast<std::size_t>(j)]),
                                         d_sym[1][static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double kuramoto_sphere_reduction_gap(Rng& rng) {
  const int n = 4, d = 3;
  KuramotoSphereParams p;
  p.kappa_theta = 0.7;
  p.kappa_x = 1.1;
  for (int j = 0; j < n; ++j) {
    p.nu.push_back(rng.gauss());
    p.omega.push_back(random_skew_symmetric(d, rng, 1.0));
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    KuramotoSphereState s;
    for (int j = 0; j < n; ++j) s.theta.push_back(2.0 * M_PI * rng.uniform());
    s.x = sample_sphere(d, n, rng);
    const auto syms = kuramoto_sphere_symbols(p, s);
    std::vector<std::vector<DenseTensor>> state(2);
    for (int j = 0; j < n; ++j) {
      const double th = s.theta[static_cast<std::size_t>(j)];
      state[0].push_back(tensor_from_vec({std::cos(th), std::sin(th)}));
      state[1].push_back(tensor_from_vec(s.x[static_cast<std::size_t>(j)]));
    }
    const auto d_sym = weakly_coupled_rhs(syms, state);
    const auto ds = kuramoto_sphere_rhs(p, s);
    for (int j = 0; j < n; ++j) {
      const double th = s.theta[static_cast<std::size_t>(j)];
      const double dth = ds.theta[static_cast<std::size_t>(j)];
      // y = (cos, sin) evolves as theta' J y
      const RealVec dy{-dth * std::sin(th), dth * std::cos(th)};
      worst = std::max(worst, tensor_gap(tensor_from_vec(dy), d_sym[0][static_cast<std::size_t>(j)]));
      worst = std::max(worst, tensor_gap(tensor_from_vec(ds.x[static_cast<std::size_t>(j)]),
                                         d_sym[1][static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

double sphere_so_reduction_gap(Rng& rng) {
  const int n = 3, d = 3, nn = 3;
  SphereSOParams p;
  p.kappa = 1.0;
  for (int j = 0; j < n; ++j) {
    p.omega.push_back(random_skew_symmetric(d, rng, 1.0));
    p.a.push_back(random_skew_symmetric(nn, rng, 1.0));
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SphereSOState s{sample_sphere(d, n, rng), sample_special_orthogonal(nn, n, rng)};
    const auto syms = sphere_so_symbols(p, s);
    std::vector<std::vector<DenseTensor>> state(2);
    for (const auto& x : s.x) state[0].push_back(tensor_from_vec(x));
    for (const auto& m : s.u) state[1].push_back(tensor_from_matrix(m));
    const auto d_sym = weakly_coupled_rhs(syms, state);
    const auto ds = sphere_so_rhs(p, s);
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, tensor_gap(tensor_from_vec(ds.x[static_cast<std::size_t>(j)]),
                                         d_sym[0][static_cast<std::size_t>(j)]));
      worst = std::max(worst, tensor_gap(tensor_from_matrix(ds.u[static_cast<std::size_t>(j)]),
                                         d_sym[1][static_cast<std::size_t>(j)]));
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckLine> check_reductions(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckLine> lines;
  const auto add = [&](const std::string& label, double gap) {
    lines.push_back(line("reduction " + label + " within 1e-10", gap <= 1e-10, "max gap " + fmt(gap)));
  };
  add("Kuramoto", kuramoto_reduction_gap(rng));
  add("hermitian sphere", hermitian_sphere_reduction_gap(rng));
  add("swarm sphere", sphere_reduction_gap(rng));
  add("generalized matrix", generalized_matrix_reduction_gap(rng));
  add("Lohe matrix", lohe_matrix_reduction_gap(rng));
  add("double sphere", double_sphere_reduction_gap(rng));
  add("double matrix", double_matrix_reduction_gap(rng));
  add("Kuramoto-sphere", kuramoto_sphere_reduction_gap(rng));
  add("sphere x SO(n)", sphere_so_reduction_gap(rng));
  return lines;
}

// -- criterion 7 ---------------------------------------------------------------

std::vector<CheckLine> check_pauli_equivalence(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 3;
  const double kappa = 1.0;

  std::vector<PauliCoordinates> coords;
  std::vector<PauliFrequency> freqs;
  for (int j = 0; j < n; ++j) {
    PauliCoordinates p;
    p.theta = M_PI * (2.0 * rng.uniform() - 1.0);
    double norm = 0.0;
    for (double& v : p.x) {
      v = rng.gauss();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : p.x) v /= norm;
    coords.push_back(p);
    PauliFrequency f;
    for (double& w : f.omega) w = rng.gauss();
    f.nu = rng.gauss();
    freqs.push_back(f);
  }

  LoheMatrixParams mp;
  mp.kappa = kappa;
  std::vector<ComplexMatrix> u0;
  KuramotoSphereParams kp;
  kp.kappa_theta = kappa;
  kp.kappa_x = kappa;
  KuramotoSphereState s0;
  for (int j = 0; j < n; ++j) {
    mp.h.push_back(pauli_hamiltonian(freqs[static_cast<std::size_t>(j)]));
    u0.push_back(pauli_encode(coords[static_cast<std::size_t>(j)]));
    kp.nu.push_back(freqs[static_cast<std::size_t>(j)].nu);
    kp.omega.push_back(omega_matrix(freqs[static_cast<std::size_t>(j)].omega));
    s0.theta.push_back(coords[static_cast<std::size_t>(j)].theta);
    s0.x.push_back({coords[static_cast<std::size_t>(j)].x[0], coords[static_cast<std::size_t>(j)].x[1],
                    coords[static_cast<std::size_t>(j)].x[2], coords[static_cast<std::size_t>(j)].x[3]});
  }

  const double h = 1e-4;
  const double t_end = 2.0;
  const int every = 200;
  const auto matrix_run = integrate_lohe_matrix(mp, u0, h, t_end, every);
  const auto coord_run = integrate_kuramoto_sphere(kp, s0, h, t_end, every);

  double worst = 0.0;
  for (std::size_t s = 0; s < matrix_run.states.size(); ++s) {
    for (int j = 0; j < n; ++j) {
      PauliCoordinates p;
      p.theta = coord_run.states[s].theta[static_cast<std::size_t>(j)];
      for (int i = 0; i < 4; ++i) {
        p.x[static_cast<std::size_t>(i)] = coord_run.states[s].x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
      worst = std::max(worst, fro_norm(matrix_run.states[s][static_cast<std::size_t>(j)] - pauli_encode(p)));
    }
  }
  return {line("U(2) trajectory vs Pauli-coordinate trajectory within 1e-6", worst <= 1e-6,
               "max gap " + fmt(worst))};
}

// -- criteria 8 and 9 ------------------------------------------------------------

std::vector<CheckLine> check_aggregation_homogeneous(std::uint64_t seed) {
  Rng rng(seed);
  const auto start = Clock::now();
  const int n = 4, d = 3, so_n = 3;
  SphereSOParams p;
  p.kappa = 1.0;
  for (int j = 0; j < n; ++j) {
    p.omega.push_back(RealMatrix(d));
    p.a.push_back(RealMatrix(so_n));
  }
  SphereSOState s0;
  s0.x = sample_sphere(d, n, rng, 0.0, 0.0, std::nullopt);
  s0.u = sample_special_orthogonal(so_n, n, rng, 0.35, std::nullopt, std::sqrt(2.0) * 0.95);

  const auto run = integrate_sphere_so(p, s0, 1e-3, 50.0, 100);
  // fit on the cleanly decaying prefix; past ~1e-10 the samples sit on the
  // floating-point floor and carry no rate information
  std::vector<double> times, values;
  for (std::size_t s = 0; s < run.states.size(); ++s) {
    const double v = vec_diameter(run.states[s].x) + matrix_diameter(run.states[s].u);
    if (v <= 1e-10) break;
    times.push_back(run.times[s]);
    values.push_back(v);
  }
  const double final_v = vec_diameter(run.states.back().x) + matrix_diameter(run.states.back().u);
  const RateFit fit = exp_rate_fit(times, values);
  const double elapsed = seconds_since(start);
  return {
      line("homogeneous sphere x SO(3): D(X)+D(U) <= 1e-4 at t=50", final_v <= 1e-4, fmt(final_v)),
      line("homogeneous sphere x SO(3): tail rate < -0.05, r^2 > 0.99",
           fit.rate < -0.05 && fit.r2 > 0.99, "rate " + fmt(fit.rate) + ", r2 " + fmt(fit.r2)),
      line("homogeneous aggregation runtime < 30 s", elapsed < 30.0, fmt(elapsed) + " s"),
  };
}

std::vector<CheckLine> check_double_sphere_aggregation(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 4, d = 3;
  DoubleSphereParams p;
  p.kappa = 1.0;
  p.omega = skew_family(n, d, rng, 0.4, true);
  p.lambda = skew_family(n, d, rng, 0.4, true);
  DoubleSphereState s0;
  s0.u = sample_sphere(d, n, rng, 0.0, 0.05, std::nullopt);
  s0.v = sample_sphere(d, n, rng, 0.0, 0.05, std::nullopt);

  const auto run = integrate_double_sphere(p, s0, 1e-3, 50.0, 100);
  std::vector<double> times, du, dv;
  for (std::size_t s = 0; s < run.states.size(); ++s) {
    const double a = vec_diameter(run.states[s].u);
    const double b = vec_diameter(run.states[s].v);
    if (a <= 1e-10 || b <= 1e-10) break;
    times.push_back(run.times[s]);
    du.push_back(a);
    dv.push_back(b);
  }
  const double fu = vec_diameter(run.states.back().u);
  const double fv = vec_diameter(run.states.back().v);
  const RateFit fit_u = exp_rate_fit(times, du);
  const RateFit fit_v = exp_rate_fit(times, dv);
  return {
      line("double sphere: both diameters <= 1e-4 at t=50", fu <= 1e-4 && fv <= 1e-4,
           "D(U)=" + fmt(fu) + ", D(V)=" + fmt(fv)),
      line("double sphere: exponential tails (rate < -0.05, r^2 > 0.99)",
           fit_u.rate < -0.05 && fit_u.r2 > 0.99 && fit_v.rate < -0.05 && fit_v.r2 > 0.99,
           "rates " + fmt(fit_u.rate) + ", " + fmt(fit_v.rate)),
  };
}

// -- criterion 10 -----------------------------------------------------------------

namespace {

struct PracticalRun {
  double mean_dx = 0.0;
  double mean_du2 = 0.0;
  double bound_dx = 0.0;
  double bound_du2 = 0.0;
  bool conditions_ok = false;
};

PracticalRun practical_aggregation_run(const SphereSOParams& p, const SphereSOState& s0,
                                       double d_omega, double d_a) {
  PracticalRun out;
  const double ax0 = vec_alignment(s0.x);
  const double au0 = matrix_alignment(s0.u);
  const double du0 = matrix_diameter(s0.u);
  out.bound_dx = 1.0 - std::sqrt(1.0 - 8.0 * d_omega / (p.kappa * au0));
  out.bound_du2 = 1.0 - std::sqrt(1.0 - 4.0 * d_a / (p.kappa * ax0));
  out.conditions_ok =
      ax0 > 0.5 && du0 * du0 < 1.0 + std::sqrt(1.0 - 4.0 * d_a / (p.kappa * ax0)) &&
      p.kappa > std::min(4.0 * d_a / ax0, 8.0 * d_omega / au0);

  const auto run = integrate_sphere_so(p, s0, 1e-3, 50.0, 100);
  double sum_dx = 0.0, sum_du2 = 0.0;
  int count = 0;
  for (std::size_t s = 0; s < run.states.size(); ++s) {
    if (run.times[s] < 40.0) continue;
    const double dx = vec_diameter(run.states[s].x);
    const double du = matrix_diameter(run.states[s].u);
    sum_dx += dx;
    sum_du2 += du * du;
    ++count;
  }
  out.mean_dx = sum_dx / count;
  out.mean_du2 = sum_du2 / count;
  return out;
}

}  // namespace

std::vector<CheckLine> check_aggregation_practical(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 4, d = 3, so_n = 3;

  SphereSOParams p;
  p.omega = skew_family(n, d, rng, 0.04, false);
  p.a = skew_family(n, so_n, rng, 0.04, false);
  // rescale both families so the Frobenius diameters are 0.1 exactly
  const auto rescale = [&](std::vector<RealMatrix>& ms) {
    double diam = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        diam = std::max(diam, fro_norm(ms[static_cast<std::size_t>(i)] - ms[static_cast<std::size_t>(j)]));
      }
    }
    for (auto& m : ms) m = (0.1 / diam) * m;
  };
  rescale(p.omega);
  rescale(p.a);
  double d_omega = 0.0, d_a = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d_omega = std::max(d_omega, fro_norm(p.omega[static_cast<std::size_t>(i)] - p.omega[static_cast<std::size_t>(j)]));
      d_a = std::max(d_a, fro_norm(p.a[static_cast<std::size_t>(i)] - p.a[static_cast<std::size_t>(j)]));
    }
  }

  SphereSOState s0;
  s0.x = sample_sphere(d, n, rng, 0.3, 0.55, std::nullopt);
  s0.u = sample_special_orthogonal(so_n, n, rng, 0.3, std::nullopt, 1.2);

  p.kappa = 10.0;
  const PracticalRun low = practical_aggregation_run(p, s0, d_omega, d_a);
  p.kappa = 100.0;
  const PracticalRun high = practical_aggregation_run(p, s0, d_omega, d_a);

  return {
      line("practical aggregation: initial-data conditions hold at kappa=10",
           low.conditions_ok, "D(Omega)=" + fmt(d_omega) + ", D(A)=" + fmt(d_a)),
      line("practical aggregation kappa=10: D(X), D(U)^2 within analytic bounds",
           low.mean_dx <= low.bound_dx && low.mean_du2 <= low.bound_du2,
           "D(X) " + fmt(low.mean_dx) + " <= " + fmt(low.bound_dx) + "; D(U)^2 " +
               fmt(low.mean_du2) + " <= " + fmt(low.bound_du2)),
      line("practical aggregation kappa=100: D(X), D(U)^2 within analytic bounds",
           high.mean_dx <= high.bound_dx && high.mean_du2 <= high.bound_du2,
           "D(X) " + fmt(high.mean_dx) + " <= " + fmt(high.bound_dx) + "; D(U)^2 " +
               fmt(high.mean_du2) + " <= " + fmt(high.bound_du2)),
      line("practical aggregation: 10x kappa shrinks both asymptotes >= 2x",
           high.mean_dx * 2.0 <= low.mean_dx && high.mean_du2 * 2.0 <= low.mean_du2,
           "D(X) " + fmt(low.mean_dx) + " -> " + fmt(high.mean_dx) + "; D(U)^2 " +
               fmt(low.mean_du2) + " -> " + fmt(high.mean_du2)),
  };
}

// -- criterion 11 -----------------------------------------------------------------

std::vector<CheckLine> check_partial_locking(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 4, d = 3, so_n = 3;
  SphereSOParams p;
  p.kappa = 10.0;
  p.omega = skew_family(n, d, rng, 0.2, true);   // common free flow for positions
  p.a = skew_family(n, so_n, rng, 0.04, false);  // heterogeneous matrix free flows

  SphereSOState s0;
  s0.x = sample_sphere(d, n, rng, 0.4, 0.3, std::nullopt);
  s0.u = sample_special_orthogonal(so_n, n, rng, 0.3, std::nullopt, 1.2);

  const auto run = integrate_sphere_so(p, s0, 1e-3, 50.0, 1000);  // samples each 1.0 time unit
  const double final_dx = vec_diameter(run.states.back().x);

  double worst_g = 0.0;
  for (std::size_t s = 1; s < run.states.size(); ++s) {
    if (run.times[s] < 45.0) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const RealMatrix now = run.states[s].u[static_cast<std::size_t>(i)] *
                               transpose(run.states[s].u[static_cast<std::size_t>(j)]);
        const RealMatrix prev = run.states[s - 1].u[static_cast<std::size_t>(i)] *
                                transpose(run.states[s - 1].u[static_cast<std::size_t>(j)]);
        worst_g = std::max(worst_g, fro_norm(now - prev));
      }
    }
  }
  return {
      line("partial locking: D(X) <= 1e-4 at t=50", final_dx <= 1e-4, fmt(final_dx)),
      line("partial locking: max ||G_ij(t)-G_ij(t-1)||_F <= 1e-5 on t in [45,50]", worst_g <= 1e-5,
           fmt(worst_g)),
  };
}

// -- criterion 12 -----------------------------------------------------------------

std::vector<CheckLine> check_residual_decay(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 4;
  std::vector<CharacteristicSymbol> comps;
  {
    CharacteristicSymbol c1;
    c1.size = SizeVector{{2}};
    c1.coupling = CouplingTensor(1, {0.8, 0.5});
    c1.freqs.assign(n, FrequencyTensor(c1.size));
    c1.initial = sample_unit_tensors(c1.size, n, rng, false);
    CharacteristicSymbol c2;
    c2.size = SizeVector{{3}};
    c2.coupling = CouplingTensor(1, {0.7, 0.4});
    c2.freqs.assign(n, FrequencyTensor(c2.size));
    c2.initial = sample_unit_tensors(c2.size, n, rng, false);
    comps = {c1, c2};
  }

  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 50.0;
  opt.sample_every = 500;
  opt.record_residual = true;
  const ComponentTrajectory traj = integrate_components(comps, opt);
  const double first = *traj.records.front().residual;
  const double last = *traj.records.back().residual;
  return {line("zero free flow residual at t=50 <= 1e-3 x initial", last <= 1e-3 * first,
               fmt(first) + " -> " + fmt(last))};
}

// -- criterion 13 -----------------------------------------------------------------

std::vector<CheckLine> check_gradient_potential(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckLine> lines;

  {
    const int n = 4, d = 3;
    SphereParams p;
    p.kappa = 1.0;
    p.omega.assign(n, RealMatrix(d));
    const auto run = integrate_sphere(p, sample_sphere(d, n, rng), 1e-3, 10.0, 10);
    bool monotone = true;
    double prev = -1e300;
    for (const auto& xs : run.states) {
      std::vector<DenseTensor> ts;
      for (const auto& x : xs) ts.push_back(tensor_from_vec(x));
      const double v = potential(ts, p.kappa);
      if (v < prev - 1e-12) monotone = false;
      prev = v;
    }
    lines.push_back(line("sphere model potential non-decreasing (slack 1e-12)", monotone, "1000 samples"));
  }
  {
    const int n = 3, d = 2;
    LoheMatrixParams p;
    p.kappa = 1.0;
    p.h.assign(n, ComplexMatrix(d));
    const auto run = integrate_lohe_matrix(p, sample_unitary(d, n, rng), 1e-3, 10.0, 10);
    bool monotone = true;
    double prev = -1e300;
    for (const auto& us : run.states) {
      std::vector<DenseTensor> ts;
      for (const auto& u : us) ts.push_back(tensor_from_matrix(u));
      const double v = potential(ts, p.kappa);
      if (v < prev - 1e-12) monotone = false;
      prev = v;
    }
    lines.push_back(line("Lohe matrix potential non-decreasing (slack 1e-12)", monotone, "1000 samples"));
  }
  {
    const int n = 4;
    const auto first = sample_unit_tensors(SizeVector{{2}}, n, rng, false);
    const auto second = sample_unit_tensors(SizeVector{{3}}, n, rng, false);
    std::vector<DenseTensor> fused;
    for (int j = 0; j < n; ++j) {
      fused.push_back(tensor_product(first[static_cast<std::size_t>(j)], second[static_cast<std::size_t>(j)]));
    }
    const double direct = potential(fused, 1.7);
    const double product = potential_product({first, second}, 1.7);
    lines.push_back(line("separable potential product form within 1e-12",
                         std::abs(direct - product) <= 1e-12, fmt(std::abs(direct - product))));
  }
  return lines;
}

// -- criterion 14 -----------------------------------------------------------------

std::vector<CheckLine> check_integrator_order(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 5;
  KuramotoParams p;
  p.kappa = 1.0;
  RealVec theta0;
  for (int j = 0; j < n; ++j) {
    p.nu.push_back(rng.gauss());
    theta0.push_back(2.0 * M_PI * rng.uniform());
  }
  const double t_end = 5.0;
  const auto endpoint = [&](double h) {
    const auto run = integrate_kuramoto(p, theta0, h, t_end, 1 << 30);
    return run.states.back();
  };
  const RealVec ref = endpoint(1e-5);
  const double e1 = max_abs(endpoint(1e-2), ref);
  const double e2 = max_abs(endpoint(5e-3), ref);
  const double ratio = e1 / e2;
  return {line("RK4 halving-step error ratio in [12, 20]", ratio >= 12.0 && ratio <= 20.0,
               "errors " + fmt(e1) + " / " + fmt(e2) + ", ratio " + fmt(ratio))};
}

// -- suites ------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"monoid",
          "decomposition",
          "conservation",
          "aggregation-homogeneous",
          "aggregation-practical",
          "partial-locking",
          "pauli-equivalence",
          "residual-decay",
          "permutation-equivariance",
          "gradient-potential"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  SuiteResult result;
  result.suite = name;
  if (name == "monoid") {
    result.lines = check_monoid_laws(seed);
    const auto comm = check_commutativity(seed + 1);
    result.lines.insert(result.lines.end(), comm.begin(), comm.end());
  } else if (name == "decomposition") {
    result.lines = check_decomposition(seed);
  } else if (name == "conservation") {
    result.lines = check_conservation(seed);
  } else if (name == "aggregation-homogeneous") {
    result.lines = check_aggregation_homogeneous(seed);
    const auto ds = check_double_sphere_aggregation(seed + 1);
    result.lines.insert(result.lines.end(), ds.begin(), ds.end());
  } else if (name == "aggregation-practical") {
    result.lines = check_aggregation_practical(seed);
  } else if (name == "partial-locking") {
    result.lines = check_partial_locking(seed);
  } else if (name == "pauli-equivalence") {
    result.lines = check_pauli_equivalence(seed);
  } else if (name == "residual-decay") {
    result.lines = check_residual_decay(seed);
  } else if (name == "permutation-equivariance") {
    result.lines = check_permutation_equivariance(seed);
  } else if (name == "gradient-potential") {
    result.lines = check_gradient_potential(seed);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return result;
}

}  // namespace lohe
