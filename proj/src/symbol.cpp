#include "lohe/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lohe {

CouplingTensor::CouplingTensor(int rank)
    : rank_(rank), values_(std::size_t{1} << rank, 0.0) {}

CouplingTensor::CouplingTensor(int rank, std::vector<double> values)
    : rank_(rank), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << rank_)) {
    throw ShapeError("coupling tensor needs exactly 2^rank values");
  }
}

CouplingTensor CouplingTensor::scalar(double kappa) {
  CouplingTensor k;
  k.values_[0] = kappa;
  return k;
}

double CouplingTensor::operator[](const Bitstring& pattern) const {
  if (pattern.length() != rank_) throw ShapeError("coupling lookup: pattern length mismatch");
  return values_[pattern.index()];
}

double& CouplingTensor::operator[](const Bitstring& pattern) {
  if (pattern.length() != rank_) throw ShapeError("coupling lookup: pattern length mismatch");
  return values_[pattern.index()];
}

double SymbolValidation::max_skew_residual() const {
  return skew_residuals.empty() ? 0.0 : *std::max_element(skew_residuals.begin(), skew_residuals.end());
}

double SymbolValidation::max_norm_residual() const {
  return norm_residuals.empty() ? 0.0 : *std::max_element(norm_residuals.begin(), norm_residuals.end());
}

bool SymbolValidation::ok(double skew_tol, double norm_tol) const {
  return shapes_ok && max_skew_residual() <= skew_tol && max_norm_residual() <= norm_tol;
}

SizeVector fuse_size(const SizeVector& d1, const SizeVector& d2) { return concat(d1, d2); }

CouplingTensor fuse_coupling(const CouplingTensor& k1, const CouplingTensor& k2) {
  const int m1 = k1.rank();
  const int m2 = k2.rank();
  CouplingTensor out(m1 + m2);
  const std::uint32_t ones1 = (1u << m1) - 1u;
  const std::uint32_t ones2 = (1u << m2) - 1u;
  for (std::uint32_t j = 0; j <= ones1; ++j) {
    out.values()[(static_cast<std::size_t>(j) << m2) | ones2] += k1.at_index(j);
  }
  for (std::uint32_t k = 0; k <= ones2; ++k) {
    out.values()[(static_cast<std::size_t>(ones1) << m2) | k] += k2.at_index(k);
  }
  return out;
}

FrequencyTensor fuse_freq(const FrequencyTensor& a1, const FrequencyTensor& a2) {
  const std::size_t d1 = a1.dim();
  const std::size_t d2 = a2.dim();
  FrequencyTensor out(concat(a1.size(), a2.size()));
  for (std::size_t r1 = 0; r1 < d1; ++r1) {
    for (std::size_t c1 = 0; c1 < d1; ++c1) {
      const Complex v = a1.at(r1, c1);
      if (v == Complex{}) continue;
      for (std::size_t r2 = 0; r2 < d2; ++r2) out.at(r1 * d2 + r2, c1 * d2 + r2) += v;
    }
  }
  for (std::size_t r2 = 0; r2 < d2; ++r2) {
    for (std::size_t c2 = 0; c2 < d2; ++c2) {
      const Complex v = a2.at(r2, c2);
      if (v == Complex{}) continue;
      for (std::size_t r1 = 0; r1 < d1; ++r1) out.at(r1 * d2 + r2, r1 * d2 + c2) += v;
    }
  }
  return out;
}

CharacteristicSymbol fuse_symbols(const CharacteristicSymbol& c1, const CharacteristicSymbol& c2) {
  if (c1.ensemble_size() != c2.ensemble_size()) {
    throw EnsembleSizeError("fuse_symbols: ensemble sizes differ");
  }
  CharacteristicSymbol out;
  out.size = fuse_size(c1.size, c2.size);
  out.coupling = fuse_coupling(c1.coupling, c2.coupling);
  out.freqs.reserve(c1.freqs.size());
  out.initial.reserve(c1.initial.size());
  for (int j = 0; j < c1.ensemble_size(); ++j) {
    out.freqs.push_back(fuse_freq(c1.freqs[static_cast<std::size_t>(j)], c2.freqs[static_cast<std::size_t>(j)]));
    out.initial.push_back(
        tensor_product(c1.initial[static_cast<std::size_t>(j)], c2.initial[static_cast<std::size_t>(j)]));
  }
  return out;
}

CharacteristicSymbol identity_symbol(int ensemble_size) {
  if (ensemble_size < 1) throw EnsembleSizeError("identity_symbol: ensemble size must be >= 1");
  CharacteristicSymbol c;
  c.size = SizeVector{};
  c.coupling = CouplingTensor{};
  c.freqs.assign(static_cast<std::size_t>(ensemble_size), FrequencyTensor{});
  c.initial.assign(static_cast<std::size_t>(ensemble_size), DenseTensor::scalar(Complex{1.0, 0.0}));
  return c;
}

CouplingTensor shuffle_coupling(const CouplingTensor& k, const Permutation& sigma) {
  if (sigma.size() != k.rank()) throw ShapeError("shuffle_coupling: rank mismatch");
  const Permutation inv = sigma.inverse();
  CouplingTensor out(k.rank());
  const int m = k.rank();
  for (std::uint32_t b = 0; b < (1u << m); ++b) {
    // source bit p equals output bit inv(p), as for tensor entries
    std::uint32_t src = 0;
    for (int p = 0; p < m; ++p) {
      const std::uint32_t bit = (b >> (m - 1 - inv(p))) & 1u;
      src |= bit << (m - 1 - p);
    }
    out.values()[b] = k.at_index(src);
  }
  return out;
}

FrequencyTensor shuffle_freq(const FrequencyTensor& a, const Permutation& sigma) {
  if (sigma.size() != a.size().rank()) throw ShapeError("shuffle_freq: rank mismatch");
  std::vector<int> dims(static_cast<std::size_t>(a.size().rank()));
  for (int q = 0; q < a.size().rank(); ++q) dims[static_cast<std::size_t>(q)] = a.size().dim(sigma(q));
  FrequencyTensor out{SizeVector(dims)};
  const Permutation inv = sigma.inverse();
  const std::size_t d = a.dim();
  // map each shuffled flat index to the source flat index
  std::vector<std::size_t> src_of(d);
  std::vector<int> src(static_cast<std::size_t>(a.size().rank()));
  for (std::size_t f = 0; f < d; ++f) {
    const std::vector<int> dst = unflatten(out.size(), f);
    for (int p = 0; p < a.size().rank(); ++p) src[static_cast<std::size_t>(p)] = dst[static_cast<std::size_t>(inv(p))];
    src_of[f] = flat_index(a.size(), src);
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out.at(r, c) = a.at(src_of[r], src_of[c]);
  }
  return out;
}

CharacteristicSymbol shuffle_symbol(const CharacteristicSymbol& c, const Permutation& sigma) {
  if (sigma.size() != c.rank()) throw ShapeError("shuffle_symbol: rank mismatch");
  CharacteristicSymbol out;
  std::vector<int> dims(static_cast<std::size_t>(c.rank()));
  for (int q = 0; q < c.rank(); ++q) dims[static_cast<std::size_t>(q)] = c.size.dim(sigma(q));
  out.size = SizeVector(dims);
  out.coupling = shuffle_coupling(c.coupling, sigma);
  out.freqs.reserve(c.freqs.size());
  out.initial.reserve(c.initial.size());
  for (const auto& a : c.freqs) out.freqs.push_back(shuffle_freq(a, sigma));
  for (const auto& t : c.initial) out.initial.push_back(shuffle(t, sigma));
  return out;
}

SymbolValidation validate_symbol(const CharacteristicSymbol& c) {
  SymbolValidation v;
  if (c.initial.empty() || c.freqs.size() != c.initial.size()) {
    v.shape_message = "frequency/initial counts differ or ensemble is empty";
    return v;
  }
  if (c.coupling.rank() != c.rank()) {
    v.shape_message = "coupling rank differs from size vector rank";
    return v;
  }
  for (const auto& a : c.freqs) {
    if (a.size() != c.size) {
      v.shape_message = "frequency tensor size differs from symbol size";
      return v;
    }
  }
  for (const auto& t : c.initial) {
    if (t.size() != c.size) {
      v.shape_message = "initial tensor size differs from symbol size";
      return v;
    }
  }
  v.shapes_ok = true;
  for (const auto& a : c.freqs) v.skew_residuals.push_back(a.skew_hermitian_residual());
  for (const auto& t : c.initial) v.norm_residuals.push_back(std::abs(frobenius_norm(t) - 1.0));
  v.real = is_real_symbol(c);
  return v;
}

bool is_real_symbol(const CharacteristicSymbol& c, double tol) {
  for (const auto& a : c.freqs) {
    for (const Complex& v : a.matrix()) {
      if (std::abs(v.imag()) > tol) return false;
    }
  }
  for (const auto& t : c.initial) {
    for (const Complex& v : t.entries()) {
      if (std::abs(v.imag()) > tol) return false;
    }
  }
  return true;
}

bool symbols_equal(const CharacteristicSymbol& a, const CharacteristicSymbol& b) {
  return a.size == b.size && a.coupling == b.coupling && a.freqs == b.freqs && a.initial == b.initial;
}

bool symbols_close(const CharacteristicSymbol& a, const CharacteristicSymbol& b, double tol) {
  if (a.size != b.size || a.ensemble_size() != b.ensemble_size()) return false;
  if (a.coupling.rank() != b.coupling.rank()) return false;
  for (std::size_t i = 0; i < a.coupling.count(); ++i) {
    if (std::abs(a.coupling.values()[i] - b.coupling.values()[i]) > tol) return false;
  }
  for (std::size_t j = 0; j < a.freqs.size(); ++j) {
    const auto& ma = a.freqs[j].matrix();
    const auto& mb = b.freqs[j].matrix();
    for (std::size_t f = 0; f < ma.size(); ++f) {
      if (std::abs(ma[f] - mb[f]) > tol) return false;
    }
    const auto& ta = a.initial[j].entries();
    const auto& tb = b.initial[j].entries();
    for (std::size_t f = 0; f < ta.size(); ++f) {
      if (std::abs(ta[f] - tb[f]) > tol) return false;
    }
  }
  return true;
}

std::optional<Permutation> equivalent_up_to_shuffle(const CharacteristicSymbol& a,
                                                    const CharacteristicSymbol& b) {
  if (a.rank() != b.rank() || a.ensemble_size() != b.ensemble_size()) return std::nullopt;
  std::vector<int> img(static_cast<std::size_t>(a.rank()));
  std::iota(img.begin(), img.end(), 0);
  do {
    const Permutation sigma{img};
    if (symbols_equal(shuffle_symbol(a, sigma), b)) return sigma;
  } while (std::next_permutation(img.begin(), img.end()));
  return std::nullopt;
}

CostReport cost_report(const std::vector<SizeVector>& sizes) {
  if (sizes.empty()) throw ShapeError("cost_report: at least one size vector required");
  CostReport r;
  const std::size_t n = sizes.size();
  r.fused_entries = 1;
  r.summed_entries = 0;
  bool all_at_least_two = true;
  for (const auto& d : sizes) {
    const std::uint64_t entries = d.total();
    r.fused_entries *= entries;
    r.summed_entries += entries;
    if (entries < 2) all_at_least_two = false;
  }
  const double pow2 = std::ldexp(1.0, static_cast<int>(n) - 1);
  r.bound = 2.0 * (static_cast<double>(n) - 1.0) + static_cast<double>(r.fused_entries) / pow2;
  r.bound_applicable = all_at_least_two;
  r.bound_holds = static_cast<double>(r.summed_entries) <= r.bound;
  r.reduction_ratio = 2.0 * (static_cast<double>(n) - 1.0) / static_cast<double>(r.fused_entries) + 1.0 / pow2;
  return r;
}

}  // namespace lohe
