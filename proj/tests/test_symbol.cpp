#include <doctest.h>

#include "lohe/generate.hpp"
#include "lohe/symbol.hpp"
#include "test_support.hpp"

using namespace lohe;
using lohe::test::random_tensor;

namespace {

SymbolSpec shape_spec(Rng& rng, int ensemble, bool dyadic) {
  SymbolSpec spec;
  const int rank = rng.pick(0, 2);
  std::vector<int> dims;
  for (int i = 0; i < rank; ++i) dims.push_back(rng.pick(2, 3));
  spec.size = SizeVector{dims};
  spec.ensemble = ensemble;
  spec.dyadic = dyadic;
  return spec;
}

}  // namespace

TEST_CASE("size fusion concatenates") {
  CHECK(fuse_size(SizeVector{{2}}, SizeVector{{3}}) == SizeVector{{2, 3}});
  CHECK(fuse_size(SizeVector{}, SizeVector{{4}}) == SizeVector{{4}});
  CHECK(fuse_size(fuse_size(SizeVector{{2, 2}}, SizeVector{{3}}), SizeVector{{4}}) ==
        SizeVector{{2, 2, 3, 4}});
}

TEST_CASE("coupling fusion gates on all-ones blocks") {
  // rank-0 pair adds
  CHECK(fuse_coupling(CouplingTensor::scalar(0.5), CouplingTensor::scalar(0.25)).values() ==
        std::vector<double>{0.75});

  // zero rank-0 strength is neutral
  Rng rng(3);
  for (int rank = 0; rank <= 3; ++rank) {
    CouplingTensor k(rank);
    for (double& v : k.values()) v = rng.gauss();
    CHECK(fuse_coupling(CouplingTensor{}, k) == k);
    CHECK(fuse_coupling(k, CouplingTensor{}) == k);
  }

  // (1,2) * (3,4) -> k00=0, k01=1, k10=3, k11=6
  const CouplingTensor fused = fuse_coupling(CouplingTensor(1, {1.0, 2.0}), CouplingTensor(1, {3.0, 4.0}));
  CHECK(fused.values() == std::vector<double>{0.0, 1.0, 3.0, 6.0});

  // two sphere patterns (k,0): only the off-diagonal slots populate
  const CouplingTensor spheres = fuse_coupling(CouplingTensor(1, {1.5, 0.0}), CouplingTensor(1, {2.5, 0.0}));
  CHECK(spheres.values() == std::vector<double>{0.0, 1.5, 2.5, 0.0});
}

TEST_CASE("frequency fusion is the Kronecker sum in flattened form") {
  // rank-0 scalars add
  const FrequencyTensor a(SizeVector{}, {Complex{0.0, 1.0}});
  const FrequencyTensor b(SizeVector{}, {Complex{0.0, 2.0}});
  CHECK(fuse_freq(a, b).matrix() == std::vector<Complex>{Complex{0.0, 3.0}});

  Rng rng(5);
  const SizeVector d1{{2}}, d2{{2}};
  const FrequencyTensor a1 = random_block_skew_freq(d1, rng, 1.0);
  const FrequencyTensor a2 = random_block_skew_freq(d2, rng, 1.0);

  // neutral element
  CHECK(fuse_freq(FrequencyTensor{}, a1) == a1);
  CHECK(fuse_freq(a1, FrequencyTensor{}) == a1);

  // independent four-index evaluation of the definition
  const FrequencyTensor fused = fuse_freq(a1, a2);
  CHECK(fused.is_block_skew_hermitian(1e-12));
  for (int b0 = 0; b0 < 2; ++b0) {
    for (int g0 = 0; g0 < 2; ++g0) {
      for (int b1 = 0; b1 < 2; ++b1) {
        for (int g1 = 0; g1 < 2; ++g1) {
          Complex expected{};
          if (g0 == g1) expected += a1.at(static_cast<std::size_t>(b0), static_cast<std::size_t>(b1));
          if (b0 == b1) expected += a2.at(static_cast<std::size_t>(g0), static_cast<std::size_t>(g1));
          CHECK(fused.at(static_cast<std::size_t>(b0 * 2 + g0), static_cast<std::size_t>(b1 * 2 + g1)) ==
                expected);
        }
      }
    }
  }

  // associativity within floating tolerance on generic values
  const FrequencyTensor a3 = random_block_skew_freq(SizeVector{{2}}, rng, 1.0);
  const FrequencyTensor lhs = fuse_freq(fuse_freq(a1, a2), a3);
  const FrequencyTensor rhs = fuse_freq(a1, fuse_freq(a2, a3));
  for (std::size_t i = 0; i < lhs.matrix().size(); ++i) {
    CHECK(std::abs(lhs.matrix()[i] - rhs.matrix()[i]) <= 1e-12);
  }
}

TEST_CASE("identity symbol and fusion laws") {
  Rng rng(7);
  const CharacteristicSymbol e = identity_symbol(3);
  CHECK(e.rank() == 0);
  CHECK(e.coupling.values() == std::vector<double>{0.0});
  for (const auto& t : e.initial) CHECK(t[0] == Complex{1.0, 0.0});
  const SymbolValidation v = validate_symbol(e);
  CHECK(v.ok());
  CHECK(v.real);

  const CharacteristicSymbol c = random_symbol(shape_spec(rng, 3, false), rng);
  CHECK(symbols_equal(fuse_symbols(e, c), c));
  CHECK(symbols_equal(fuse_symbols(c, e), c));

  CHECK_THROWS_AS(fuse_symbols(identity_symbol(2), c), EnsembleSizeError);
}

TEST_CASE("monoid laws hold exactly on a dyadic grid") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int ensemble = rng.pick(1, 4);
    const CharacteristicSymbol c1 = random_symbol(shape_spec(rng, ensemble, true), rng);
    const CharacteristicSymbol c2 = random_symbol(shape_spec(rng, ensemble, true), rng);
    const CharacteristicSymbol c3 = random_symbol(shape_spec(rng, ensemble, true), rng);
    CHECK(symbols_equal(fuse_symbols(fuse_symbols(c1, c2), c3),
                        fuse_symbols(c1, fuse_symbols(c2, c3))));
  }
}

TEST_CASE("fusion of valid symbols is valid, and reality is closed") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    SymbolSpec s1 = shape_spec(rng, 3, false);
    SymbolSpec s2 = shape_spec(rng, 3, false);
    s1.real = s2.real = (trial % 2 == 0);
    const CharacteristicSymbol c1 = random_symbol(s1, rng);
    const CharacteristicSymbol c2 = random_symbol(s2, rng);
    const CharacteristicSymbol fused = fuse_symbols(c1, c2);
    const SymbolValidation v = validate_symbol(fused);
    CHECK(v.shapes_ok);
    CHECK(v.max_skew_residual() <= 1e-12);
    CHECK(v.max_norm_residual() <= 1e-10);
    if (s1.real) CHECK(v.real);
  }
}

TEST_CASE("commutativity up to the block swap shuffle") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int ensemble = rng.pick(1, 3);
    const CharacteristicSymbol c1 = random_symbol(shape_spec(rng, ensemble, false), rng);
    const CharacteristicSymbol c2 = random_symbol(shape_spec(rng, ensemble, false), rng);
    const Permutation swap = Permutation::block_swap(c1.rank(), c2.rank());
    CHECK(symbols_equal(shuffle_symbol(fuse_symbols(c1, c2), swap), fuse_symbols(c2, c1)));
  }
}

TEST_CASE("block products of shuffles distribute over fusion") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    SymbolSpec s1, s2;
    s1.size = SizeVector{{rng.pick(2, 3), rng.pick(2, 3)}};
    s2.size = SizeVector{{rng.pick(2, 3), rng.pick(2, 3)}};
    s1.ensemble = s2.ensemble = 2;
    const CharacteristicSymbol c1 = random_symbol(s1, rng);
    const CharacteristicSymbol c2 = random_symbol(s2, rng);
    const Permutation sigma1{{1, 0}};
    const Permutation sigma2 = rng.uniform() < 0.5 ? Permutation{{1, 0}} : Permutation::identity(2);
    CHECK(symbols_equal(shuffle_symbol(fuse_symbols(c1, c2), Permutation::block_product(sigma1, sigma2)),
                        fuse_symbols(shuffle_symbol(c1, sigma1), shuffle_symbol(c2, sigma2))));
  }
}

TEST_CASE("shuffle_symbol transforms every component consistently") {
  Rng rng(23);
  SymbolSpec spec;
  spec.size = SizeVector{{2, 3, 2}};
  spec.ensemble = 2;
  const CharacteristicSymbol c = random_symbol(spec, rng);
  CHECK(symbols_equal(shuffle_symbol(c, Permutation::identity(3)), c));

  const Permutation sigma{{2, 0, 1}};
  const CharacteristicSymbol cs = shuffle_symbol(c, sigma);
  CHECK(cs.size == SizeVector{{2, 2, 3}});
  // round trip through the inverse
  CHECK(symbols_equal(shuffle_symbol(cs, sigma.inverse()), c));
  // coupling entries move with their patterns
  for (std::uint32_t ix = 0; ix < 8; ++ix) {
    const Bitstring pattern = Bitstring::from_index(ix, 3);
    std::vector<std::uint8_t> moved(3);
    for (int q = 0; q < 3; ++q) moved[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(pattern.bit(sigma(q)));
    CHECK(cs.coupling[Bitstring{moved}] == c.coupling[pattern]);
  }
  CHECK(equivalent_up_to_shuffle(c, cs).has_value());
}

TEST_CASE("validation flags broken symbols") {
  CharacteristicSymbol c = identity_symbol(2);
  // replace a frequency with a non-skew entry
  c.freqs[0] = FrequencyTensor(SizeVector{}, {Complex{1.0, 0.0}});
  const SymbolValidation v = validate_symbol(c);
  CHECK(v.shapes_ok);
  CHECK(v.max_skew_residual() > 1.0);
  CHECK_FALSE(v.ok());

  CharacteristicSymbol bad = identity_symbol(2);
  bad.initial[1] = DenseTensor::scalar(Complex{2.0, 0.0});
  CHECK(validate_symbol(bad).max_norm_residual() == doctest::Approx(1.0));

  Rng rng(29);
  const CharacteristicSymbol good = random_symbol(shape_spec(rng, 4, false), rng);
  const SymbolValidation gv = validate_symbol(good);
  CHECK(gv.ok());
  CHECK(gv.max_skew_residual() <= 1e-12);
}

TEST_CASE("cost report") {
  const CostReport tight = cost_report({SizeVector{{2}}, SizeVector{{2}}});
  CHECK(tight.fused_entries == 4);
  CHECK(tight.summed_entries == 4);
  CHECK(tight.bound == doctest::Approx(4.0));
  CHECK(tight.bound_holds);

  const CostReport single = cost_report({SizeVector{{4}}});
  CHECK(single.summed_entries == 4);
  CHECK(single.bound == doctest::Approx(4.0));
  CHECK(single.bound_holds);

  const CostReport triple = cost_report({SizeVector{{2}}, SizeVector{{3}}, SizeVector{{4}}});
  CHECK(triple.fused_entries == 24);
  CHECK(triple.summed_entries == 9);
  CHECK(triple.bound == doctest::Approx(10.0));
  CHECK(triple.bound_holds);
  CHECK(triple.reduction_ratio == doctest::Approx(2.0 * 2.0 / 24.0 + 0.25));
}

TEST_CASE("symbol equality variants") {
  Rng rng(31);
  const CharacteristicSymbol c = random_symbol(shape_spec(rng, 2, false), rng);
  CharacteristicSymbol nudged = c;
  nudged.coupling.values()[0] += 5e-11;
  CHECK_FALSE(symbols_equal(c, nudged));
  CHECK(symbols_close(c, nudged, 1e-10));
  nudged.coupling.values()[0] += 1e-9;
  CHECK_FALSE(symbols_close(c, nudged, 1e-10));
}
