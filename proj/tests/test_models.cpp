#include <doctest.h>

#include <cmath>

#include "lohe/dynamics.hpp"
#include "lohe/generate.hpp"
#include "lohe/models.hpp"
#include "test_support.hpp"

using namespace lohe;

namespace {
const Complex kI{0.0, 1.0};

RealMatrix rotation2(double angle) {
  RealMatrix m(2);
  m(0, 0) = std::cos(angle);
  m(0, 1) = -std::sin(angle);
  m(1, 0) = std::sin(angle);
  m(1, 1) = std::cos(angle);
  return m;
}
}  // namespace

TEST_CASE("kuramoto phase velocities") {
  KuramotoParams p;
  p.nu = {0.3, -0.1};
  p.kappa = 1.0;

  // equal phases leave only the natural frequencies
  const RealVec flat = kuramoto_rhs(p, {1.0, 1.0});
  CHECK(flat[0] == doctest::Approx(0.3));
  CHECK(flat[1] == doctest::Approx(-0.1));

  p.nu = {0.0, 0.0};
  const RealVec v = kuramoto_rhs(p, {0.0, M_PI / 2.0});
  CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("double sphere velocities: frozen two-particle case") {
  DoubleSphereParams p;
  p.kappa = 1.0;
  p.omega.assign(2, RealMatrix(2));
  p.lambda.assign(2, RealMatrix(2));
  DoubleSphereState s;
  s.u = {{1.0, 0.0}, {0.0, 1.0}};
  s.v = {{0.6, 0.8}, {1.0, 0.0}};
  const DoubleSphereState d = double_sphere_rhs(p, s);
  CHECK(d.u[0][0] == doctest::Approx(0.0));
  CHECK(d.u[0][1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(d.u[1][0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(d.u[1][1] == doctest::Approx(0.0));
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(d.v[static_cast<std::size_t>(j)][0]) <= 1e-15);
    CHECK(std::abs(d.v[static_cast<std::size_t>(j)][1]) <= 1e-15);
  }
}

TEST_CASE("double sphere: all-equal ensembles feel only the free flow") {
  Rng rng(3);
  DoubleSphereParams p;
  p.kappa = 2.0;
  p.omega = {random_skew_symmetric(3, rng, 1.0), random_skew_symmetric(3, rng, 1.0)};
  p.lambda = {random_skew_symmetric(2, rng, 1.0), random_skew_symmetric(2, rng, 1.0)};
  const auto u = sample_sphere(3, 1, rng).front();
  const auto v = sample_sphere(2, 1, rng).front();
  DoubleSphereState s{{u, u}, {v, v}};
  const DoubleSphereState d = double_sphere_rhs(p, s);
  for (int j = 0; j < 2; ++j) {
    RealVec fu(3, 0.0), fv(2, 0.0);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) fu[static_cast<std::size_t>(r)] += p.omega[static_cast<std::size_t>(j)](r, c) * u[static_cast<std::size_t>(c)];
    }
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) fv[static_cast<std::size_t>(r)] += p.lambda[static_cast<std::size_t>(j)](r, c) * v[static_cast<std::size_t>(c)];
    }
    for (int i = 0; i < 3; ++i) CHECK(d.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == doctest::Approx(fu[static_cast<std::size_t>(i)]).epsilon(1e-12));
    for (int i = 0; i < 2; ++i) CHECK(d.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == doctest::Approx(fv[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("sphere tangency and double-sphere tangency") {
  Rng rng(5);
  SphereParams p;
  p.kappa = 1.3;
  for (int j = 0; j < 4; ++j) p.omega.push_back(random_skew_symmetric(4, rng, 1.0));
  const auto xs = sample_sphere(4, 4, rng);
  const auto dx = sphere_rhs(p, xs);
  for (int j = 0; j < 4; ++j) {
    double dot = 0.0;
    for (int i = 0; i < 4; ++i) dot += xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * dx[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    CHECK(std::abs(dot) <= 1e-10);
  }
}

TEST_CASE("double matrix velocities: frozen two-particle case") {
  DoubleMatrixParams p;
  p.kappa = 1.0;
  p.h.assign(2, ComplexMatrix(2));
  p.g.assign(2, ComplexMatrix(2));
  DoubleMatrixState s;
  s.u = {ComplexMatrix::identity(2), ComplexMatrix(2, {0.0, Complex{-1.0, 0.0}, 1.0, 0.0})};
  s.v = {ComplexMatrix::identity(2),
         ComplexMatrix(2, {std::exp(kI * (M_PI / 4.0)), 0.0, 0.0, std::exp(-kI * (M_PI / 4.0))})};
  const DoubleMatrixState d = double_matrix_rhs(p, s);
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(d.u[0](0, 1) - Complex{-r2, 0.0}) <= 1e-14);
  CHECK(std::abs(d.u[0](1, 0) - Complex{r2, 0.0}) <= 1e-14);
  CHECK(std::abs(d.u[0](0, 0)) <= 1e-14);
  CHECK(std::abs(d.u[1](0, 0) - Complex{r2, 0.0}) <= 1e-14);
  CHECK(std::abs(d.u[1](1, 1) - Complex{r2, 0.0}) <= 1e-14);
  for (int j = 0; j < 2; ++j) CHECK(fro_norm(d.v[static_cast<std::size_t>(j)]) <= 1e-14);
}

TEST_CASE("matrix flows keep unitarity to first order") {
  Rng rng(7);
  LoheMatrixParams p;
  p.kappa = 1.1;
  for (int j = 0; j < 3; ++j) p.h.push_back(random_hermitian(3, rng, 1.0));
  const auto us = sample_unitary(3, 3, rng);
  const auto du = lohe_matrix_rhs(p, us);
  for (int j = 0; j < 3; ++j) {
    // d/dt (U U^dagger) = dU U^dagger + U dU^dagger should vanish at unitary points
    const ComplexMatrix m = du[static_cast<std::size_t>(j)] * adjoint(us[static_cast<std::size_t>(j)]) +
                            us[static_cast<std::size_t>(j)] * adjoint(du[static_cast<std::size_t>(j)]);
    CHECK(fro_norm(m) <= 1e-10);
  }
}

TEST_CASE("sphere x SO(n) velocities: frozen two-particle case") {
  SphereSOParams p;
  p.kappa = 1.0;
  p.omega.assign(2, RealMatrix(2));
  p.a.assign(2, RealMatrix(2));
  SphereSOState s;
  s.x = {{1.0, 0.0}, {0.6, 0.8}};
  s.u = {RealMatrix::identity(2), rotation2(M_PI / 6.0)};
  const SphereSOState d = sphere_so_rhs(p, s);
  CHECK(d.x[0][0] == doctest::Approx(0.0));
  CHECK(d.x[0][1] == doctest::Approx(0.692820323027551).epsilon(1e-13));
  CHECK(d.x[1][0] == doctest::Approx(0.5542562584220407).epsilon(1e-13));
  CHECK(d.x[1][1] == doctest::Approx(-0.4156921938165305).epsilon(1e-13));
  CHECK(d.u[0](0, 0) == doctest::Approx(0.0));
  CHECK(d.u[0](0, 1) == doctest::Approx(-0.15).epsilon(1e-13));
  CHECK(d.u[0](1, 0) == doctest::Approx(0.15).epsilon(1e-13));
  CHECK(d.u[1](0, 0) == doctest::Approx(0.075).epsilon(1e-13));
  CHECK(d.u[1](0, 1) == doctest::Approx(0.12990381056766578).epsilon(1e-13));
  CHECK(d.u[1](1, 0) == doctest::Approx(-0.12990381056766578).epsilon(1e-13));
  CHECK(d.u[1](1, 1) == doctest::Approx(0.075).epsilon(1e-13));
}

TEST_CASE("sphere x SO(n): tangency and orthogonality preservation") {
  Rng rng(11);
  SphereSOParams p;
  p.kappa = 1.4;
  for (int j = 0; j < 3; ++j) {
    p.omega.push_back(random_skew_symmetric(3, rng, 0.5));
    p.a.push_back(random_skew_symmetric(3, rng, 0.5));
  }
  SphereSOState s{sample_sphere(3, 3, rng), sample_special_orthogonal(3, 3, rng)};
  const SphereSOState d = sphere_so_rhs(p, s);
  for (int j = 0; j < 3; ++j) {
    double dot = 0.0;
    for (int i = 0; i < 3; ++i) dot += s.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * d.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    CHECK(std::abs(dot) <= 1e-10);
    const RealMatrix m = d.u[static_cast<std::size_t>(j)] * transpose(s.u[static_cast<std::size_t>(j)]) +
                         s.u[static_cast<std::size_t>(j)] * transpose(d.u[static_cast<std::size_t>(j)]);
    CHECK(fro_norm(m) <= 1e-10);
  }
}

TEST_CASE("kuramoto-sphere right side matches its two-sphere rewrite") {
  Rng rng(13);
  KuramotoSphereParams p;
  p.kappa_theta = 0.9;
  p.kappa_x = 1.2;
  const int n = 4, d = 3;
  for (int j = 0; j < n; ++j) {
    p.nu.push_back(rng.gauss());
    p.omega.push_back(random_skew_symmetric(d, rng, 1.0));
  }
  KuramotoSphereState s;
  for (int j = 0; j < n; ++j) s.theta.push_back(2.0 * M_PI * rng.uniform());
  s.x = sample_sphere(d, n, rng);
  const KuramotoSphereState ds = kuramoto_sphere_rhs(p, s);

  // y_j = (cos, sin): dy = nu J y + (k/N) sum (<x_j,x_k> y_k y_j.y_j - <x_k,x_j> y_j y_k.y_j)
  for (int j = 0; j < n; ++j) {
    const double tj = s.theta[static_cast<std::size_t>(j)];
    const RealVec yj{std::cos(tj), std::sin(tj)};
    RealVec dy{-p.nu[static_cast<std::size_t>(j)] * yj[1], p.nu[static_cast<std::size_t>(j)] * yj[0]};
    RealVec dx(static_cast<std::size_t>(d), 0.0);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) dx[static_cast<std::size_t>(r)] += p.omega[static_cast<std::size_t>(j)](r, c) * s.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    }
    for (int k = 0; k < n; ++k) {
      const double tk = s.theta[static_cast<std::size_t>(k)];
      const RealVec yk{std::cos(tk), std::sin(tk)};
      double xx = 0.0;
      for (int i = 0; i < d; ++i) xx += s.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * s.x[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      const double yy = yj[0] * yk[0] + yj[1] * yk[1];
      for (int i = 0; i < 2; ++i) {
        dy[static_cast<std::size_t>(i)] += p.kappa_theta / n * xx * (yk[static_cast<std::size_t>(i)] - yy * yj[static_cast<std::size_t>(i)]);
      }
      for (int i = 0; i < d; ++i) {
        dx[static_cast<std::size_t>(i)] +=
            p.kappa_x / n * yy * (s.x[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] - xx * s.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      }
    }
    const double dtj = ds.theta[static_cast<std::size_t>(j)];
    CHECK(std::abs(dy[0] - (-dtj * yj[1])) <= 1e-12);
    CHECK(std::abs(dy[1] - (dtj * yj[0])) <= 1e-12);
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(dx[static_cast<std::size_t>(i)] - ds.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) <= 1e-12);
    }
  }
}

TEST_CASE("pauli encode: frozen matrices") {
  PauliCoordinates p;
  p.theta = 0.0;
  p.x = {0.0, 0.0, 0.0, 1.0};
  CHECK(fro_norm(pauli_encode(p) - ComplexMatrix::identity(2)) == 0.0);

  p.x = {1.0, 0.0, 0.0, 0.0};  // i sigma_1
  const ComplexMatrix u = pauli_encode(p);
  CHECK(u(0, 0) == Complex{0.0, 0.0});
  CHECK(u(0, 1) == Complex{0.0, 1.0});
  CHECK(u(1, 0) == Complex{0.0, 1.0});
  CHECK(u(1, 1) == Complex{0.0, 0.0});

  // det(encode) = exp(-2 i theta)
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    PauliCoordinates q;
    q.theta = M_PI * (2.0 * rng.uniform() - 1.0);
    double norm = 0.0;
    for (double& v : q.x) {
      v = rng.gauss();
      norm += v * v;
    }
    for (double& v : q.x) v /= std::sqrt(norm);
    const ComplexMatrix m = pauli_encode(q);
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CHECK(std::abs(det - std::exp(-2.0 * kI * q.theta)) <= 1e-12);
    CHECK(fro_norm(adjoint(m) * m - ComplexMatrix::identity(2)) <= 1e-12);
  }
}

TEST_CASE("pauli decode round trip under the branch convention") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    PauliCoordinates p;
    p.theta = M_PI * (2.0 * rng.uniform() - 1.0);
    double norm = 0.0;
    for (double& v : p.x) {
      v = rng.gauss();
      norm += v * v;
    }
    for (double& v : p.x) v /= std::sqrt(norm);
    const PauliCoordinates canonical = pauli_normalize(p);
    const PauliCoordinates decoded = pauli_decode(pauli_encode(p));
    CHECK(std::abs(decoded.theta - canonical.theta) <= 1e-12);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(decoded.x[static_cast<std::size_t>(i)] - canonical.x[static_cast<std::size_t>(i)]) <= 1e-12);
    }
    // encode is invariant under the branch flip
    CHECK(fro_norm(pauli_encode(decoded) - pauli_encode(p)) <= 1e-12);
  }
  CHECK_THROWS_AS(pauli_decode(ComplexMatrix(2, {2.0, 0.0, 0.0, 2.0})), ValidationError);
}

TEST_CASE("omega matrix is skew and matches the hamiltonian free flow") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    PauliFrequency f;
    for (double& w : f.omega) w = rng.gauss();
    f.nu = rng.gauss();
    const RealMatrix om = omega_matrix(f.omega);
    CHECK(fro_norm(om + transpose(om)) <= 1e-14);

    // free flow consistency: d/dt of encode(theta, x) with theta' = nu, x' = om x
    // equals -i H encode at the same point
    PauliCoordinates p;
    p.theta = M_PI * (2.0 * rng.uniform() - 1.0);
    double norm = 0.0;
    for (double& v : p.x) {
      v = rng.gauss();
      norm += v * v;
    }
    for (double& v : p.x) v /= std::sqrt(norm);

    RealVec dx(4, 0.0);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) dx[static_cast<std::size_t>(r)] += om(r, c) * p.x[static_cast<std::size_t>(c)];
    }
    // numerical derivative of the encoding along (nu, om x)
    const double eps = 1e-7;
    PauliCoordinates shifted = p;
    shifted.theta += eps * f.nu;
    for (int i = 0; i < 4; ++i) shifted.x[static_cast<std::size_t>(i)] += eps * dx[static_cast<std::size_t>(i)];
    const ComplexMatrix fd = (1.0 / eps) * (pauli_encode(shifted) - pauli_encode(p));
    const ComplexMatrix exact = Complex{0.0, -1.0} * (pauli_hamiltonian(f) * pauli_encode(p));
    CHECK(fro_norm(fd - exact) <= 1e-5);
  }
}

TEST_CASE("build_rank2_freq applies as left/right matrix action and equals fusion") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix omega = random_skew_symmetric(2, rng, 1.0);
    const RealMatrix lambda = random_skew_symmetric(3, rng, 1.0);
    const FrequencyTensor a = build_rank2_freq(omega, lambda);
    CHECK(a.is_block_skew_hermitian(1e-12));

    DenseTensor t = test::random_tensor(SizeVector{{2, 3}}, rng);
    const DenseTensor applied = apply_freq(a, t);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 3; ++c) {
        Complex expected{};
        for (int k = 0; k < 2; ++k) expected += omega(r, k) * t.at({k, c});
        for (int k = 0; k < 3; ++k) expected += t.at({r, k}) * lambda(c, k);  // T Lambda^T
        CHECK(std::abs(applied.at({r, c}) - expected) <= 1e-12);
      }
    }
    CHECK(a == fuse_freq(freq_from_matrix(omega), freq_from_matrix(lambda)));
  }
}

TEST_CASE("generators are deterministic and land on their manifolds") {
  InitialSpec spec;
  spec.kind = InitKind::SpecialOrthogonal;
  spec.size = SizeVector{{3, 3}};
  spec.ensemble = 4;
  spec.seed = 99;
  const auto a = generate_initial(spec);
  const auto b = generate_initial(spec);
  for (int j = 0; j < 4; ++j) CHECK(a[static_cast<std::size_t>(j)] == b[static_cast<std::size_t>(j)]);

  Rng rng(31);
  for (const auto& t : a) {
    const ComplexMatrix u = matrix_from_tensor(t);
    CHECK(fro_norm(adjoint(u) * u - ComplexMatrix::identity(3)) <= 1e-10);
    double max_imag = 0.0;
    for (const auto& v : u.entries()) max_imag = std::max(max_imag, std::abs(v.imag()));
    CHECK(max_imag == 0.0);
    RealMatrix r(3);
    for (int i = 0; i < 9; ++i) r.entries()[static_cast<std::size_t>(i)] = u.entries()[static_cast<std::size_t>(i)].real();
    CHECK(determinant(r) == doctest::Approx(1.0).epsilon(1e-8));
  }

  const auto xs = sample_sphere(3, 4, rng, 0.0, 0.5, std::nullopt);
  CHECK(vec_alignment(xs) > 0.5);
  for (const auto& x : xs) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
  }

  InitialSpec impossible;
  impossible.kind = InitKind::Sphere;
  impossible.size = SizeVector{{3}};
  impossible.ensemble = 3;
  impossible.seed = 1;
  impossible.min_alignment = 0.999999;
  impossible.budget = 50;
  CHECK_THROWS_AS(generate_initial(impossible), GenerationError);
}

TEST_CASE("real symbols produce real trajectories") {
  Rng rng(37);
  SymbolSpec spec;
  spec.size = SizeVector{{3}};
  spec.ensemble = 3;
  spec.real = true;
  const CharacteristicSymbol c = random_symbol(spec, rng);
  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 10.0;
  opt.sample_every = 1000;
  const Trajectory traj = integrate_symbol(c, opt);
  double worst = 0.0;
  for (const auto& state : traj.states) {
    for (const auto& t : state) {
      for (const Complex& v : t.entries()) worst = std::max(worst, std::abs(v.imag()));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("h_ij and G_ij central differences match their evolution laws") {
  Rng rng(41);
  const int n = 3, d = 3, so_n = 3;
  SphereSOParams p;
  p.kappa = 1.0;
  for (int j = 0; j < n; ++j) {
    p.omega.push_back(random_skew_symmetric(d, rng, 0.3));
    p.a.push_back(random_skew_symmetric(so_n, rng, 0.3));
  }
  SphereSOState s0{sample_sphere(d, n, rng), sample_special_orthogonal(so_n, n, rng)};
  const double h = 1e-3;
  const auto run = integrate_sphere_so(p, s0, h, 0.2, 1);

  const auto inner = [](const RealVec& a, const RealVec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  };

  double worst_h = 0.0, worst_g = 0.0;
  for (std::size_t s = 1; s + 1 < run.states.size(); s += 20) {
    const SphereSOState& mid = run.states[s];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto si = static_cast<std::size_t>(i);
        const auto sj = static_cast<std::size_t>(j);
        // position overlaps: dh = <x_i, (Om_j - Om_i) x_j> + (k/N) sum_k (g_ik (h_kj - h_ik h_ij) + g_jk (h_ik - h_kj h_ij))
        const double fd_h =
            (inner(run.states[s + 1].x[si], run.states[s + 1].x[sj]) -
             inner(run.states[s - 1].x[si], run.states[s - 1].x[sj])) /
            (2.0 * h);
        RealVec omx(static_cast<std::size_t>(d), 0.0);
        const RealMatrix diff = p.omega[sj] - p.omega[si];
        for (int r = 0; r < d; ++r) {
          for (int c = 0; c < d; ++c) omx[static_cast<std::size_t>(r)] += diff(r, c) * mid.x[sj][static_cast<std::size_t>(c)];
        }
        double rhs_h = inner(mid.x[si], omx);
        for (int k = 0; k < n; ++k) {
          const auto sk = static_cast<std::size_t>(k);
          const double gik = fro_inner(mid.u[si], mid.u[sk]);
          const double gjk = fro_inner(mid.u[sj], mid.u[sk]);
          const double hij = inner(mid.x[si], mid.x[sj]);
          rhs_h += p.kappa / n * (gik * (inner(mid.x[sk], mid.x[sj]) - inner(mid.x[si], mid.x[sk]) * hij) +
                                  gjk * (inner(mid.x[si], mid.x[sk]) - inner(mid.x[sk], mid.x[sj]) * hij));
        }
        worst_h = std::max(worst_h, std::abs(fd_h - rhs_h));

        // relative matrix states: dG = A_i G_ij - G_ij A_j + (k/2N) sum_k (h_ik (G_kj - G_ik G_ij) + h_jk (G_ik - G_ij G_kj))
        const RealMatrix g_next = run.states[s + 1].u[si] * transpose(run.states[s + 1].u[sj]);
        const RealMatrix g_prev = run.states[s - 1].u[si] * transpose(run.states[s - 1].u[sj]);
        const RealMatrix fd_g = (1.0 / (2.0 * h)) * (g_next - g_prev);
        const RealMatrix gij = mid.u[si] * transpose(mid.u[sj]);
        RealMatrix rhs_g = p.a[si] * gij - gij * p.a[sj];
        for (int k = 0; k < n; ++k) {
          const auto sk = static_cast<std::size_t>(k);
          const RealMatrix gkj = mid.u[sk] * transpose(mid.u[sj]);
          const RealMatrix gik = mid.u[si] * transpose(mid.u[sk]);
          rhs_g = rhs_g + (p.kappa / (2.0 * n) * inner(mid.x[si], mid.x[sk])) * (gkj - gik * gij) +
                  (p.kappa / (2.0 * n) * inner(mid.x[sj], mid.x[sk])) * (gik - gij * gkj);
        }
        worst_g = std::max(worst_g, fro_norm(fd_g - rhs_g));
      }
    }
  }
  CHECK(worst_h <= 1e-4);
  CHECK(worst_g <= 1e-4);
}

TEST_CASE("zero free flow coupling residual decays with a monotone trend") {
  Rng rng(43);
  std::vector<CharacteristicSymbol> comps(2);
  comps[0].size = SizeVector{{2}};
  comps[0].coupling = CouplingTensor(1, {0.8, 0.5});
  comps[0].freqs.assign(3, FrequencyTensor(comps[0].size));
  comps[0].initial = sample_unit_tensors(comps[0].size, 3, rng);
  comps[1].size = SizeVector{{3}};
  comps[1].coupling = CouplingTensor(1, {0.7, 0.4});
  comps[1].freqs.assign(3, FrequencyTensor(comps[1].size));
  comps[1].initial = sample_unit_tensors(comps[1].size, 3, rng);

  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 50.0;
  opt.sample_every = 500;
  opt.record_residual = true;
  const ComponentTrajectory traj = integrate_components(comps, opt);

  // window maxima must decrease across ten equal windows
  const std::size_t windows = 10;
  const std::size_t per = traj.records.size() / windows;
  double prev = 1e300;
  for (std::size_t w = 0; w < windows; ++w) {
    double peak = 0.0;
    for (std::size_t i = w * per; i < (w + 1) * per && i < traj.records.size(); ++i) {
      peak = std::max(peak, *traj.records[i].residual);
    }
    CHECK(peak < prev);
    prev = peak;
  }
}
