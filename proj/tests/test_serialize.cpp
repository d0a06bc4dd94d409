#include <doctest.h>

#include "lohe/generate.hpp"
#include "lohe/serialize.hpp"

using namespace lohe;

TEST_CASE("symbol json round trip is exact") {
  Rng rng(3);
  SymbolSpec spec;
  spec.size = SizeVector{{2, 3}};
  spec.ensemble = 3;
  const CharacteristicSymbol c = random_symbol(spec, rng);
  const nlohmann::json j = symbol_to_json(c);
  const CharacteristicSymbol back = symbol_from_json(nlohmann::json::parse(j.dump()));
  CHECK(symbols_equal(c, back));
  // parse -> serialize -> parse is stable
  CHECK(symbols_equal(symbol_from_json(nlohmann::json::parse(symbol_to_json(back).dump())), back));
}

TEST_CASE("symbol json rejects malformed input") {
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse("[]")), ConfigError);
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(R"({"size": [2]})")), ConfigError);
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(
                      R"({"size": [2], "coupling": [1], "frequencies": [], "initial": []})")),
                  ConfigError);
  // coupling count must be 2^rank
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(
                      R"({"size": [2], "coupling": [1, 2, 3], "frequencies": [], "initial": []})")),
                  ConfigError);
}

TEST_CASE("diagnostics csv carries only populated columns") {
  DiagnosticsRecord a;
  a.t = 0.0;
  a.diameter_x = 1.5;
  a.norm_drift = 0.0;
  DiagnosticsRecord b = a;
  b.t = 0.5;
  b.diameter_x = 0.75;
  const std::string csv = diagnostics_csv({a, b});
  CHECK(csv.substr(0, csv.find('\n')) == "t,diameter_x,norm_drift");
  CHECK(csv.find("0.75") != std::string::npos);
  CHECK(csv.find("potential") == std::string::npos);
}

TEST_CASE("state csv writes re,im pairs per oscillator row") {
  const std::vector<DenseTensor> state{DenseTensor::scalar(Complex{1.0, -2.0}),
                                       DenseTensor::scalar(Complex{0.25, 0.0})};
  CHECK(state_csv(state) == "1,-2\n0.25,0\n");
}
