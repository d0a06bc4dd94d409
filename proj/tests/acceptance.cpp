// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <string>
#include <vector>

#include "lohe/checks.hpp"

int main() {
  using lohe::CheckLine;
  struct Criterion {
    const char* label;
    std::vector<CheckLine> (*run)(std::uint64_t);
    std::uint64_t seed;
  };
  const std::vector<Criterion> criteria = {
      {"01 monoid laws", lohe::check_monoid_laws, 1001},
      {"02 commutativity up to shuffle", lohe::check_commutativity, 1002},
      {"03 norm conservation", lohe::check_conservation, 1003},
      {"04 decomposition", lohe::check_decomposition, 1004},
      {"05 permutation equivariance", lohe::check_permutation_equivariance, 1005},
      {"06 named-model reductions", lohe::check_reductions, 1006},
      {"07 Pauli equivalence", lohe::check_pauli_equivalence, 1007},
      {"08 homogeneous aggregation", lohe::check_aggregation_homogeneous, 1008},
      {"09 double sphere aggregation", lohe::check_double_sphere_aggregation, 1009},
      {"10 practical aggregation", lohe::check_aggregation_practical, 1010},
      {"11 partial locking", lohe::check_partial_locking, 1011},
      {"12 residual decay", lohe::check_residual_decay, 1012},
      {"13 gradient potential", lohe::check_gradient_potential, 1013},
      {"14 integrator order", lohe::check_integrator_order, 1014},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    bool ok = true;
    std::string detail;
    std::vector<CheckLine> lines;
    try {
      lines = criterion.run(criterion.seed);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    for (const auto& l : lines) {
      if (!l.passed) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += l.name + (l.detail.empty() ? "" : " [" + l.detail + "]");
      }
    }
    if (ok && !lines.empty()) {
      detail = lines.front().detail;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        if (!lines[i].detail.empty()) detail += "; " + lines[i].detail;
      }
    }
    std::printf("criterion %s: %s%s%s\n", criterion.label, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
