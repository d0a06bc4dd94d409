#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lohe/tensor.hpp"

namespace lohe {

struct EnsembleSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 2^m coupling strengths kappa_{i_*}, stored with the first axis as the most
/// significant bit of the pattern index. Rank 0 is a single strength.
class CouplingTensor {
 public:
  CouplingTensor() : values_(1, 0.0) {}
  explicit CouplingTensor(int rank);
  CouplingTensor(int rank, std::vector<double> values);
  static CouplingTensor scalar(double kappa);

  int rank() const { return rank_; }
  std::size_t count() const { return values_.size(); }
  double operator[](const Bitstring& pattern) const;
  double& operator[](const Bitstring& pattern);
  double at_index(std::uint32_t index) const { return values_[index]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool operator==(const CouplingTensor&) const = default;

 private:
  int rank_ = 0;
  std::vector<double> values_;
};

/// The four-tuple identifying one Cauchy problem of the tensor flow.
struct CharacteristicSymbol {
  SizeVector size;
  CouplingTensor coupling;
  std::vector<FrequencyTensor> freqs;
  std::vector<DenseTensor> initial;

  int rank() const { return size.rank(); }
  int ensemble_size() const { return static_cast<int>(initial.size()); }
};

struct SymbolValidation {
  bool shapes_ok = false;
  std::string shape_message;
  std::vector<double> skew_residuals;
  std::vector<double> norm_residuals;
  bool real = false;

  double max_skew_residual() const;
  double max_norm_residual() const;
  bool ok(double skew_tol = 1e-12, double norm_tol = 1e-10) const;
};

SizeVector fuse_size(const SizeVector& d1, const SizeVector& d2);
CouplingTensor fuse_coupling(const CouplingTensor& k1, const CouplingTensor& k2);
/// Kronecker sum of the flattened matrices: M1 (x) I + I (x) M2.
FrequencyTensor fuse_freq(const FrequencyTensor& a1, const FrequencyTensor& a2);
CharacteristicSymbol fuse_symbols(const CharacteristicSymbol& c1, const CharacteristicSymbol& c2);

/// (empty size, zero coupling, zero frequencies, unit scalars).
CharacteristicSymbol identity_symbol(int ensemble_size);

CouplingTensor shuffle_coupling(const CouplingTensor& k, const Permutation& sigma);
FrequencyTensor shuffle_freq(const FrequencyTensor& a, const Permutation& sigma);
CharacteristicSymbol shuffle_symbol(const CharacteristicSymbol& c, const Permutation& sigma);

SymbolValidation validate_symbol(const CharacteristicSymbol& c);
bool is_real_symbol(const CharacteristicSymbol& c, double tol = 1e-12);

bool symbols_equal(const CharacteristicSymbol& a, const CharacteristicSymbol& b);
bool symbols_close(const CharacteristicSymbol& a, const CharacteristicSymbol& b, double tol = 1e-10);
/// Searches all m! axis relabelings (meant for small ranks).
std::optional<Permutation> equivalent_up_to_shuffle(const CharacteristicSymbol& a,
                                                    const CharacteristicSymbol& b);

struct CostReport {
  std::uint64_t fused_entries = 0;   // product of per-factor entry counts
  std::uint64_t summed_entries = 0;  // sum of per-factor entry counts
  double bound = 0.0;                // 2(n-1) + fused / 2^(n-1)
  bool bound_applicable = false;     // every factor has at least 2 entries
  bool bound_holds = false;
  double reduction_ratio = 0.0;      // 2(n-1)/fused + 1/2^(n-1)
};

CostReport cost_report(const std::vector<SizeVector>& sizes);

}  // namespace lohe
