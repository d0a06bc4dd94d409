#include <doctest.h>

#include <cmath>

#include "lohe/dynamics.hpp"
#include "lohe/generate.hpp"
#include "lohe/models.hpp"
#include "test_support.hpp"

using namespace lohe;

namespace {

CharacteristicSymbol random_valid(Rng& rng, std::vector<int> dims, int ensemble) {
  SymbolSpec spec;
  spec.size = SizeVector{std::move(dims)};
  spec.ensemble = ensemble;
  return random_symbol(spec, rng);
}

}  // namespace

TEST_CASE("lt_rhs: free flow, mean-field exactness, and cancellation") {
  Rng rng(3);

  // zero coupling leaves only A_j T_j
  CharacteristicSymbol c = random_valid(rng, {2, 2}, 3);
  for (double& v : c.coupling.values()) v = 0.0;
  const auto d = lt_rhs(c, c.initial);
  for (int j = 0; j < 3; ++j) {
    CHECK(test::gap(d[static_cast<std::size_t>(j)],
                    apply_freq(c.freqs[static_cast<std::size_t>(j)], c.initial[static_cast<std::size_t>(j)])) <= 1e-14);
  }

  // identical ensemble: couplings cancel pairwise
  CharacteristicSymbol ci = random_valid(rng, {3}, 4);
  const std::vector<DenseTensor> same(4, ci.initial[0]);
  const auto di = lt_rhs(ci, same);
  for (int j = 0; j < 4; ++j) {
    CHECK(test::gap(di[static_cast<std::size_t>(j)],
                    apply_freq(ci.freqs[static_cast<std::size_t>(j)], same[static_cast<std::size_t>(j)])) <= 1e-13);
  }

  // mean-field form equals the literal pairwise double sum
  for (int trial = 0; trial < 10; ++trial) {
    const int rank = trial % 3;
    std::vector<int> dims;
    for (int i = 0; i < rank; ++i) dims.push_back(3 - (trial % 2));
    const CharacteristicSymbol cs = random_valid(rng, dims, 5);
    const auto fast = lt_rhs(cs, cs.initial);
    const auto slow = lt_rhs_pairwise(cs, cs.initial);
    for (int j = 0; j < 5; ++j) {
      CHECK(test::gap(fast[static_cast<std::size_t>(j)], slow[static_cast<std::size_t>(j)]) <= 1e-12);
    }
  }

  // tangency: Re<T_j, dT_j> = 0 on unit states
  const CharacteristicSymbol ct = random_valid(rng, {2, 3}, 4);
  const auto dt = lt_rhs(ct, ct.initial);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(frobenius_inner(ct.initial[static_cast<std::size_t>(j)], dt[static_cast<std::size_t>(j)]).real()) <=
          1e-10);
  }
}

TEST_CASE("lt_rhs reproduces the Kuramoto phase law") {
  KuramotoParams p;
  p.nu = {0.0, 0.0};
  p.kappa = 1.0;
  const RealVec theta{0.0, M_PI / 2.0};
  const CharacteristicSymbol sym = kuramoto_symbol(p, theta);
  const auto dz = lt_rhs(sym, sym.initial);
  const double dth0 = (std::conj(sym.initial[0][0]) * dz[0][0]).imag();
  const double dth1 = (std::conj(sym.initial[1][0]) * dz[1][0]).imag();
  CHECK(dth0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dth1 == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("weakly coupled system with one component is the plain flow") {
  Rng rng(7);
  const CharacteristicSymbol c = random_valid(rng, {2, 2}, 3);
  const auto single = weakly_coupled_rhs({c}, ComponentStates{0.0, {c.initial}});
  const auto plain = lt_rhs(c, EnsembleState{0.0, c.initial});
  for (int j = 0; j < 3; ++j) {
    CHECK(test::gap(single[0][static_cast<std::size_t>(j)], plain[static_cast<std::size_t>(j)]) <= 1e-14);
  }

  // identical states across particles: pure free flow per component
  const CharacteristicSymbol c2 = random_valid(rng, {3}, 3);
  std::vector<std::vector<DenseTensor>> same{{std::vector<DenseTensor>(3, c.initial[0])},
                                             {std::vector<DenseTensor>(3, c2.initial[0])}};
  const auto d = weakly_coupled_rhs({c, c2}, same);
  for (int j = 0; j < 3; ++j) {
    CHECK(test::gap(d[0][static_cast<std::size_t>(j)],
                    apply_freq(c.freqs[static_cast<std::size_t>(j)], same[0][static_cast<std::size_t>(j)])) <= 1e-12);
    CHECK(test::gap(d[1][static_cast<std::size_t>(j)],
                    apply_freq(c2.freqs[static_cast<std::size_t>(j)], same[1][static_cast<std::size_t>(j)])) <= 1e-12);
  }
}

TEST_CASE("integrator hits closed-form endpoints and conserves norms") {
  // rank 0 free flow: z' = i z, z(pi) = -1
  CharacteristicSymbol c;
  c.size = SizeVector{};
  c.coupling = CouplingTensor{};
  c.freqs.emplace_back(SizeVector{}, std::vector<Complex>{Complex{0.0, 1.0}});
  c.initial.push_back(DenseTensor::scalar(1.0));
  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = M_PI;
  opt.sample_every = 1000;
  const Trajectory traj = integrate_symbol(c, opt);
  CHECK(traj.times.back() == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(std::abs(traj.states.back()[0][0] - Complex{-1.0, 0.0}) <= 1e-10);

  // kappa = 0: linear skew flow conserves norms to integrator accuracy
  Rng rng(11);
  CharacteristicSymbol cs = random_valid(rng, {2, 2}, 3);
  for (double& v : cs.coupling.values()) v = 0.0;
  IntegrateOptions o2;
  o2.h = 1e-3;
  o2.t_end = 1.0;
  o2.sample_every = 100;
  const Trajectory t2 = integrate_symbol(cs, o2);
  for (double d : t2.norm_drift) CHECK(d <= 1e-10);

  // identity symbol stays at 1
  const Trajectory t3 = integrate_symbol(identity_symbol(3), o2);
  for (const auto& state : t3.states) {
    for (const auto& t : state) CHECK(std::abs(t[0] - Complex{1.0, 0.0}) == 0.0);
  }
}

TEST_CASE("trajectory bookkeeping and renormalization") {
  Rng rng(13);
  const CharacteristicSymbol c = random_valid(rng, {2}, 3);
  IntegrateOptions opt;
  opt.h = 1e-2;
  opt.t_end = 0.5;
  opt.sample_every = 10;
  const Trajectory traj = integrate_symbol(c, opt);
  CHECK(traj.times.front() == 0.0);
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
  for (std::size_t j = 0; j < c.initial.size(); ++j) CHECK(traj.states.front()[j] == c.initial[j]);

  IntegrateOptions renorm = opt;
  renorm.renormalize = true;
  const Trajectory tr = integrate_symbol(c, renorm);
  for (std::size_t s = 1; s < tr.states.size(); ++s) {
    for (const auto& t : tr.states[s]) CHECK(std::abs(frobenius_norm(t) - 1.0) <= 1e-14);
  }

  CHECK_THROWS_AS((integrate_symbol(c, IntegrateOptions{.h = -1.0, .t_end = 1.0})), ShapeError);
}

TEST_CASE("divergence guard names the failing step") {
  // a huge positive real diagonal entry makes the linear flow blow up fast
  CharacteristicSymbol c;
  c.size = SizeVector{};
  c.coupling = CouplingTensor{};
  c.freqs.emplace_back(SizeVector{}, std::vector<Complex>{Complex{1e8, 0.0}});
  c.initial.push_back(DenseTensor::scalar(1.0));
  IntegrateOptions opt;
  opt.h = 1.0;
  opt.t_end = 100.0;
  opt.sample_every = 1;
  CHECK_THROWS_AS(integrate_symbol(c, opt), DivergenceError);
  try {
    integrate_symbol(c, opt);
  } catch (const DivergenceError& e) {
    CHECK(e.step >= 1);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("decomposition of a fused Kuramoto pair") {
  Rng rng(17);
  const CharacteristicSymbol c1 = random_valid(rng, {}, 3);
  const CharacteristicSymbol c2 = random_valid(rng, {}, 3);
  IntegrateOptions opt;
  opt.h = 1e-3;
  opt.t_end = 2.0;
  opt.sample_every = 200;
  CHECK(decomposition_check({c1, c2}, opt) <= 1e-8);

  // identity component changes nothing
  CHECK(decomposition_check({identity_symbol(3), c1}, opt) <= 1e-12);
}

TEST_CASE("rhs output is bitwise independent of the worker count") {
  Rng rng(19);
  // large enough that the parallel path actually engages
  const CharacteristicSymbol c = random_valid(rng, {6, 6}, 8);
  setenv("LOHE_THREADS", "1", 1);
  const auto serial = lt_rhs(c, c.initial);
  setenv("LOHE_THREADS", "5", 1);
  const auto parallel = lt_rhs(c, c.initial);
  unsetenv("LOHE_THREADS");
  for (std::size_t j = 0; j < serial.size(); ++j) CHECK(serial[j] == parallel[j]);
}
