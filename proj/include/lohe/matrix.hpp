#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace lohe {

/// Minimal square-matrix arithmetic for the low-rank models. Row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, T{}) {}
  SquareMatrix(int n, std::vector<T> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(n) * n) throw std::runtime_error("matrix entry count mismatch");
  }
  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  int n() const { return n_; }
  T& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  const T& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  std::vector<T>& entries() { return a_; }
  const std::vector<T>& entries() const { return a_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<T> a_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<std::complex<double>>;

namespace matdetail {
inline double conj_of(double v) { return v; }
inline std::complex<double> conj_of(const std::complex<double>& v) { return std::conj(v); }
inline double abs2(double v) { return v * v; }
inline double abs2(const std::complex<double>& v) { return std::norm(v); }
}  // namespace matdetail

template <class T>
SquareMatrix<T> operator+(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  SquareMatrix<T> out = a;
  for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] += b.entries()[i];
  return out;
}

template <class T>
SquareMatrix<T> operator-(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  SquareMatrix<T> out = a;
  for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] -= b.entries()[i];
  return out;
}

template <class T, class S>
SquareMatrix<T> operator*(S c, const SquareMatrix<T>& a) {
  SquareMatrix<T> out = a;
  for (auto& v : out.entries()) v = static_cast<T>(c * v);
  return out;
}

template <class T>
SquareMatrix<T> operator*(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  const int n = a.n();
  SquareMatrix<T> out(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const T v = a(r, k);
      if (v == T{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += v * b(k, c);
    }
  }
  return out;
}

template <class T>
SquareMatrix<T> transpose(const SquareMatrix<T>& a) {
  SquareMatrix<T> out(a.n());
  for (int r = 0; r < a.n(); ++r) {
    for (int c = 0; c < a.n(); ++c) out(c, r) = a(r, c);
  }
  return out;
}

template <class T>
SquareMatrix<T> adjoint(const SquareMatrix<T>& a) {
  SquareMatrix<T> out(a.n());
  for (int r = 0; r < a.n(); ++r) {
    for (int c = 0; c < a.n(); ++c) out(c, r) = matdetail::conj_of(a(r, c));
  }
  return out;
}

template <class T>
T trace(const SquareMatrix<T>& a) {
  T acc{};
  for (int i = 0; i < a.n(); ++i) acc += a(i, i);
  return acc;
}

/// <A, B>_F = sum conj(A) B.
template <class T>
T fro_inner(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  T acc{};
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    acc += matdetail::conj_of(a.entries()[i]) * b.entries()[i];
  }
  return acc;
}

template <class T>
double fro_norm(const SquareMatrix<T>& a) {
  double acc = 0.0;
  for (const auto& v : a.entries()) acc += matdetail::abs2(v);
  return std::sqrt(acc);
}

/// Determinant by LU with partial pivoting; fine for the small sizes used here.
template <class T>
T determinant(SquareMatrix<T> a) {
  const int n = a.n();
  T det{1};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) return T{};
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

/// Modified Gram-Schmidt on columns. Throws if the columns are dependent.
template <class T>
SquareMatrix<T> orthonormalize(SquareMatrix<T> a) {
  const int n = a.n();
  for (int c = 0; c < n; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      T proj{};
      for (int r = 0; r < n; ++r) proj += matdetail::conj_of(a(r, prev)) * a(r, c);
      for (int r = 0; r < n; ++r) a(r, c) -= proj * a(r, prev);
    }
    double norm = 0.0;
    for (int r = 0; r < n; ++r) norm += matdetail::abs2(a(r, c));
    norm = std::sqrt(norm);
    if (norm < 1e-30) throw std::runtime_error("orthonormalize: rank-deficient input");
    for (int r = 0; r < n; ++r) a(r, c) /= norm;
  }
  return a;
}

}  // namespace lohe
