#include "lohe/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace lohe {

SizeVector::SizeVector(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) throw ShapeError("size vector entries must be >= 1");
  }
}

std::size_t SizeVector::total() const {
  std::size_t n = 1;
  for (int d : dims_) n *= static_cast<std::size_t>(d);
  return n;
}

SizeVector concat(const SizeVector& a, const SizeVector& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return SizeVector(dims);
}

std::vector<std::size_t> strides(const SizeVector& size) {
  const int m = size.rank();
  std::vector<std::size_t> s(static_cast<std::size_t>(m));
  std::size_t acc = 1;
  for (int p = m - 1; p >= 0; --p) {
    s[static_cast<std::size_t>(p)] = acc;
    acc *= static_cast<std::size_t>(size.dim(p));
  }
  return s;
}

std::size_t flat_index(const SizeVector& size, const std::vector<int>& multi) {
  if (static_cast<int>(multi.size()) != size.rank()) throw ShapeError("multi-index rank mismatch");
  std::size_t f = 0;
  for (int p = 0; p < size.rank(); ++p) {
    const int a = multi[static_cast<std::size_t>(p)];
    if (a < 0 || a >= size.dim(p)) throw ShapeError("multi-index out of range");
    f = f * static_cast<std::size_t>(size.dim(p)) + static_cast<std::size_t>(a);
  }
  return f;
}

std::vector<int> unflatten(const SizeVector& size, std::size_t flat) {
  std::vector<int> multi(static_cast<std::size_t>(size.rank()));
  for (int p = size.rank() - 1; p >= 0; --p) {
    const auto d = static_cast<std::size_t>(size.dim(p));
    multi[static_cast<std::size_t>(p)] = static_cast<int>(flat % d);
    flat /= d;
  }
  return multi;
}

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ShapeError("bitstring entries must be 0 or 1");
  }
}

Bitstring Bitstring::from_index(std::uint32_t index, int length) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(length));
  for (int p = 0; p < length; ++p) {
    bits[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>((index >> (length - 1 - p)) & 1u);
  }
  return Bitstring(bits);
}

std::uint32_t Bitstring::index() const {
  std::uint32_t ix = 0;
  for (auto b : bits_) ix = (ix << 1) | b;
  return ix;
}

bool Bitstring::all_ones() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 1; });
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)]) {
      throw ShapeError("permutation image is not a rearrangement of 0..m-1");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> img(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) img[static_cast<std::size_t>(q)] = q;
  return Permutation(img);
}

Permutation Permutation::block_swap(int m1, int m2) {
  std::vector<int> img(static_cast<std::size_t>(m1 + m2));
  for (int q = 0; q < m2; ++q) img[static_cast<std::size_t>(q)] = m1 + q;
  for (int q = 0; q < m1; ++q) img[static_cast<std::size_t>(m2 + q)] = q;
  return Permutation(img);
}

Permutation Permutation::block_product(const Permutation& s1, const Permutation& s2) {
  const int m1 = s1.size();
  std::vector<int> img(static_cast<std::size_t>(m1 + s2.size()));
  for (int q = 0; q < m1; ++q) img[static_cast<std::size_t>(q)] = s1(q);
  for (int q = 0; q < s2.size(); ++q) img[static_cast<std::size_t>(m1 + q)] = m1 + s2(q);
  return Permutation(img);
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image_.size());
  for (int q = 0; q < size(); ++q) img[static_cast<std::size_t>(image_[static_cast<std::size_t>(q)])] = q;
  return Permutation(img);
}

Permutation compose(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw ShapeError("permutation size mismatch");
  std::vector<int> img(static_cast<std::size_t>(s.size()));
  for (int q = 0; q < s.size(); ++q) img[static_cast<std::size_t>(q)] = t(s(q));
  return Permutation(img);
}

DenseTensor::DenseTensor(SizeVector size) : size_(std::move(size)), entries_(size_.total(), Complex{}) {}

DenseTensor::DenseTensor(SizeVector size, std::vector<Complex> entries)
    : size_(std::move(size)), entries_(std::move(entries)) {
  if (entries_.size() != size_.total()) throw ShapeError("entry count does not match size vector");
}

DenseTensor DenseTensor::scalar(Complex value) {
  DenseTensor t;
  t.entries_[0] = value;
  return t;
}

FrequencyTensor::FrequencyTensor(SizeVector size)
    : size_(std::move(size)), dim_(size_.total()), matrix_(dim_ * dim_, Complex{}) {}

FrequencyTensor::FrequencyTensor(SizeVector size, std::vector<Complex> matrix)
    : size_(std::move(size)), dim_(size_.total()), matrix_(std::move(matrix)) {
  if (matrix_.size() != dim_ * dim_) throw ShapeError("frequency matrix must be D x D");
}

double FrequencyTensor::skew_hermitian_residual() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      worst = std::max(worst, std::abs(at(r, c) + std::conj(at(c, r))));
    }
  }
  return worst;
}

bool FrequencyTensor::is_block_skew_hermitian(double tol) const {
  return skew_hermitian_residual() <= tol;
}

Complex frobenius_inner(const DenseTensor& s, const DenseTensor& t) {
  if (s.size() != t.size()) throw ShapeError("frobenius_inner: size mismatch");
  Complex acc{};
  for (std::size_t f = 0; f < s.total(); ++f) acc += std::conj(s[f]) * t[f];
  return acc;
}

double frobenius_norm(const DenseTensor& t) {
  double acc = 0.0;
  for (const Complex& v : t.entries()) acc += std::norm(v);
  return std::sqrt(acc);
}

DenseTensor conjugate(const DenseTensor& t) {
  DenseTensor out = t;
  for (Complex& v : out.entries()) v = std::conj(v);
  return out;
}

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b) {
  if (a.size() != b.size()) throw ShapeError("tensor sum: size mismatch");
  DenseTensor out = a;
  for (std::size_t f = 0; f < out.total(); ++f) out[f] += b[f];
  return out;
}

DenseTensor operator-(const DenseTensor& a, const DenseTensor& b) {
  if (a.size() != b.size()) throw ShapeError("tensor difference: size mismatch");
  DenseTensor out = a;
  for (std::size_t f = 0; f < out.total(); ++f) out[f] -= b[f];
  return out;
}

DenseTensor operator*(Complex c, const DenseTensor& t) {
  DenseTensor out = t;
  for (Complex& v : out.entries()) v *= c;
  return out;
}

DenseTensor tensor_product(const DenseTensor& s, const DenseTensor& t) {
  DenseTensor out(concat(s.size(), t.size()));
  const std::size_t dt = t.total();
  for (std::size_t i = 0; i < s.total(); ++i) {
    for (std::size_t j = 0; j < dt; ++j) out[i * dt + j] = s[i] * t[j];
  }
  return out;
}

DenseTensor shuffle(const DenseTensor& t, const Permutation& sigma) {
  if (sigma.size() != t.rank()) throw ShapeError("shuffle: permutation length must equal rank");
  std::vector<int> dims(static_cast<std::size_t>(t.rank()));
  for (int q = 0; q < t.rank(); ++q) dims[static_cast<std::size_t>(q)] = t.size().dim(sigma(q));
  DenseTensor out{SizeVector(dims)};
  const Permutation inv = sigma.inverse();
  std::vector<int> src(static_cast<std::size_t>(t.rank()));
  for (std::size_t f = 0; f < out.total(); ++f) {
    const std::vector<int> dst = unflatten(out.size(), f);
    for (int p = 0; p < t.rank(); ++p) src[static_cast<std::size_t>(p)] = dst[static_cast<std::size_t>(inv(p))];
    out[f] = t.at(src);
  }
  return out;
}

DenseTensor apply_freq(const FrequencyTensor& a, const DenseTensor& t) {
  if (a.size() != t.size()) throw ShapeError("apply_freq: size mismatch");
  const std::size_t d = a.dim();
  DenseTensor out(t.size());
  for (std::size_t r = 0; r < d; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < d; ++c) acc += a.at(r, c) * t[c];
    out[r] = acc;
  }
  return out;
}

namespace detail {

void split_strides(const SizeVector& size, const Bitstring& pattern,
                   std::vector<std::size_t>& zero_part, std::vector<std::size_t>& one_part) {
  const std::size_t total = size.total();
  const auto str = strides(size);
  zero_part.assign(total, 0);
  one_part.assign(total, 0);
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int p = 0; p < size.rank(); ++p) {
      const std::size_t sp = str[static_cast<std::size_t>(p)];
      const std::size_t part = (rem / sp) * sp;
      rem -= part;
      (pattern.bit(p) ? one_part[f] : zero_part[f]) += part;
    }
  }
}

}  // namespace detail

DenseTensor coupling_increment(const DenseTensor& t_mean, const DenseTensor& t_j,
                               const Bitstring& pattern, double kappa) {
  if (t_mean.size() != t_j.size()) throw ShapeError("coupling_increment: size mismatch");
  if (pattern.length() != t_j.rank()) throw ShapeError("coupling_increment: pattern length mismatch");
  const std::size_t total = t_j.total();
  std::vector<std::size_t> zero_part, one_part;
  detail::split_strides(t_j.size(), pattern, zero_part, one_part);

  DenseTensor out(t_j.size());
  for (std::size_t a = 0; a < total; ++a) {
    Complex acc{};
    for (std::size_t b = 0; b < total; ++b) {
      const std::size_t first = zero_part[a] + one_part[b];
      const std::size_t tail = zero_part[b] + one_part[a];
      acc += (t_mean[first] * std::conj(t_j[b]) - t_j[first] * std::conj(t_mean[b])) * t_j[tail];
    }
    out[a] = kappa * acc;
  }
  return out;
}

DenseTensor pair_term(const DenseTensor& s, const DenseTensor& t, const Bitstring& pattern) {
  if (s.size() != t.size()) throw ShapeError("pair_term: size mismatch");
  if (pattern.length() != t.rank()) throw ShapeError("pair_term: pattern length mismatch");
  const SizeVector& d = t.size();
  const std::size_t total = d.total();
  std::vector<std::size_t> zero_part, one_part;
  detail::split_strides(d, pattern, zero_part, one_part);

  std::vector<int> free_dims;
  for (int p = 0; p < d.rank(); ++p) {
    if (!pattern.bit(p)) free_dims.push_back(d.dim(p));
  }
  const SizeVector free_size{free_dims};
  const auto full_str = strides(d);

  // flat offsets of the pattern-0 sub-grid within the full index space
  std::vector<std::size_t> free_offsets(free_size.total());
  for (std::size_t u = 0; u < free_offsets.size(); ++u) {
    const std::vector<int> sub = unflatten(free_size, u);
    std::size_t off = 0;
    int slot = 0;
    for (int p = 0; p < d.rank(); ++p) {
      if (!pattern.bit(p)) {
        off += static_cast<std::size_t>(sub[static_cast<std::size_t>(slot)]) * full_str[static_cast<std::size_t>(p)];
        ++slot;
      }
    }
    free_offsets[u] = off;
  }

  DenseTensor out(concat(free_size, d));
  for (std::size_t u = 0; u < free_offsets.size(); ++u) {
    for (std::size_t b = 0; b < total; ++b) {
      const std::size_t first = free_offsets[u] + one_part[b];
      out[u * total + b] = s[first] * std::conj(t[b]) - t[first] * std::conj(s[b]);
    }
  }
  return out;
}

}  // namespace lohe
