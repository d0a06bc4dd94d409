#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lohe {

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckLine> lines;
  bool passed() const;
};

std::vector<std::string> suite_names();
/// Runs one named suite; throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

// One function per acceptance criterion; the named suites group them.
std::vector<CheckLine> check_monoid_laws(std::uint64_t seed);
std::vector<CheckLine> check_commutativity(std::uint64_t seed);
std::vector<CheckLine> check_conservation(std::uint64_t seed);
std::vector<CheckLine> check_decomposition(std::uint64_t seed);
std::vector<CheckLine> check_permutation_equivariance(std::uint64_t seed);
std::vector<CheckLine> check_reductions(std::uint64_t seed);
std::vector<CheckLine> check_pauli_equivalence(std::uint64_t seed);
std::vector<CheckLine> check_aggregation_homogeneous(std::uint64_t seed);
std::vector<CheckLine> check_double_sphere_aggregation(std::uint64_t seed);
std::vector<CheckLine> check_aggregation_practical(std::uint64_t seed);
std::vector<CheckLine> check_partial_locking(std::uint64_t seed);
std::vector<CheckLine> check_residual_decay(std::uint64_t seed);
std::vector<CheckLine> check_gradient_potential(std::uint64_t seed);
std::vector<CheckLine> check_integrator_order(std::uint64_t seed);

}  // namespace lohe
