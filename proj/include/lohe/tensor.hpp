#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lohe {

using Complex = std::complex<double>;
using RealVec = std::vector<double>;

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis lengths (d_1,...,d_m) of a rank-m tensor. The empty vector is the
/// rank-0 (scalar) case with total size 1.
class SizeVector {
 public:
  SizeVector() = default;
  explicit SizeVector(std::vector<int> dims);

  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total() const;

  bool operator==(const SizeVector&) const = default;

 private:
  std::vector<int> dims_;
};

SizeVector concat(const SizeVector& a, const SizeVector& b);

// Row-major flattening with the first axis slowest. Multi-indices are 0-based.
std::vector<std::size_t> strides(const SizeVector& size);
std::size_t flat_index(const SizeVector& size, const std::vector<int>& multi);
std::vector<int> unflatten(const SizeVector& size, std::size_t flat);

/// Coupling pattern i_* in {0,1}^m. Rank 0 has the unique empty pattern.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::vector<std::uint8_t> bits);
  /// Decodes `index` with the first axis as the most significant bit.
  static Bitstring from_index(std::uint32_t index, int length);

  int length() const { return static_cast<int>(bits_.size()); }
  int bit(int p) const { return bits_[static_cast<std::size_t>(p)]; }
  std::uint32_t index() const;
  bool all_ones() const;

  bool operator==(const Bitstring&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Axis relabeling sigma on [m], stored as the image sequence
/// (sigma(0),...,sigma(m-1)) with 0-based entries.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int m);
  /// Moves a leading m1-axis block after a trailing m2-block, so that
  /// shuffling a fused object with this permutation swaps the two factors.
  static Permutation block_swap(int m1, int m2);
  /// Acts as s1 on the first m1 axes and s2 on the remaining ones.
  static Permutation block_product(const Permutation& s1, const Permutation& s2);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int q) const { return image_[static_cast<std::size_t>(q)]; }
  const std::vector<int>& image() const { return image_; }
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

/// compose(s, t)(q) = t(s(q)); shuffle(T, compose(s, t)) == shuffle(shuffle(T, t), s).
Permutation compose(const Permutation& s, const Permutation& t);

/// Dense rank-m complex tensor in flat row-major order.
class DenseTensor {
 public:
  DenseTensor() : entries_(1, Complex{}) {}
  explicit DenseTensor(SizeVector size);
  DenseTensor(SizeVector size, std::vector<Complex> entries);
  static DenseTensor scalar(Complex value);

  const SizeVector& size() const { return size_; }
  int rank() const { return size_.rank(); }
  std::size_t total() const { return entries_.size(); }

  Complex& operator[](std::size_t flat) { return entries_[flat]; }
  const Complex& operator[](std::size_t flat) const { return entries_[flat]; }
  Complex& at(const std::vector<int>& multi) { return entries_[flat_index(size_, multi)]; }
  const Complex& at(const std::vector<int>& multi) const { return entries_[flat_index(size_, multi)]; }

  std::vector<Complex>& entries() { return entries_; }
  const std::vector<Complex>& entries() const { return entries_; }

  bool operator==(const DenseTensor&) const = default;

 private:
  SizeVector size_;
  std::vector<Complex> entries_;
};

/// Natural frequency tensor of a rank-m state, stored as the flattened D x D
/// matrix M[flat(a0)][flat(a1)] = [A]_{a0 a1}.
class FrequencyTensor {
 public:
  FrequencyTensor() : matrix_(1, Complex{}) {}
  explicit FrequencyTensor(SizeVector size);
  FrequencyTensor(SizeVector size, std::vector<Complex> matrix);

  const SizeVector& size() const { return size_; }
  std::size_t dim() const { return dim_; }

  Complex& at(std::size_t row, std::size_t col) { return matrix_[row * dim_ + col]; }
  const Complex& at(std::size_t row, std::size_t col) const { return matrix_[row * dim_ + col]; }
  std::vector<Complex>& matrix() { return matrix_; }
  const std::vector<Complex>& matrix() const { return matrix_; }

  /// max |M(r,c) + conj(M(c,r))| over all entries.
  double skew_hermitian_residual() const;
  bool is_block_skew_hermitian(double tol = 1e-12) const;

  bool operator==(const FrequencyTensor&) const = default;

 private:
  SizeVector size_;
  std::size_t dim_ = 1;
  std::vector<Complex> matrix_;
};

Complex frobenius_inner(const DenseTensor& s, const DenseTensor& t);
double frobenius_norm(const DenseTensor& t);
DenseTensor conjugate(const DenseTensor& t);

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator-(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator*(Complex c, const DenseTensor& t);

DenseTensor tensor_product(const DenseTensor& s, const DenseTensor& t);

/// [T^sigma]_{a_{sigma(*)}} = [T]_{a_*}; the result has size (d_{sigma(0)},...).
DenseTensor shuffle(const DenseTensor& t, const Permutation& sigma);

/// Flattened matrix-vector product M . flat(T).
DenseTensor apply_freq(const FrequencyTensor& a, const DenseTensor& t);

/// One mean-field coupling term of the tensor flow: kappa * (gain - loss)
/// where, per axis p, the first factor reads the free index when the pattern
/// bit is 0 and the contracted index when it is 1, the conjugated factor
/// always reads the contracted index, and the trailing factor reads the
/// complement. Contraction runs over all contracted multi-indices.
DenseTensor coupling_increment(const DenseTensor& t_mean, const DenseTensor& t_j,
                               const Bitstring& pattern, double kappa);

/// Uncontracted gain/loss pair difference
///   E = S_{a_{*i}} conj(T)_{a_{*1}} - T_{a_{*i}} conj(S)_{a_{*1}},
/// laid out with the pattern-0 axes of the first slot followed by all axes of
/// the contracted slot. Pattern-1 axes of the first slot are tied to the
/// matching contracted axis.
DenseTensor pair_term(const DenseTensor& s, const DenseTensor& t, const Bitstring& pattern);

namespace detail {
// flat = zero_part[flat] + one_part[flat], splitting each multi-index into the
// contribution of pattern-0 axes and pattern-1 axes.
void split_strides(const SizeVector& size, const Bitstring& pattern,
                   std::vector<std::size_t>& zero_part, std::vector<std::size_t>& one_part);
}  // namespace detail

}  // namespace lohe
