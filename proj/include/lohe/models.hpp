#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lohe/dynamics.hpp"
#include "lohe/matrix.hpp"
#include "lohe/rk4.hpp"
#include "lohe/symbol.hpp"

namespace lohe {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- Kuramoto phases ----------------------------------------------------------

struct KuramotoParams {
  RealVec nu;
  double kappa = 0.0;
};

RealVec kuramoto_rhs(const KuramotoParams& p, const RealVec& theta);
CharacteristicSymbol kuramoto_symbol(const KuramotoParams& p, const RealVec& theta0);

// -- sphere models ------------------------------------------------------------

struct SphereParams {
  std::vector<RealMatrix> omega;  // skew-symmetric free flows
  double kappa = 0.0;
};

std::vector<RealVec> sphere_rhs(const SphereParams& p, const std::vector<RealVec>& x);
CharacteristicSymbol sphere_symbol(const SphereParams& p, const std::vector<RealVec>& x0);

struct HermitianSphereParams {
  std::vector<ComplexMatrix> omega;  // skew-Hermitian free flows
  double kappa0 = 0.0;
  double kappa1 = 0.0;
};

std::vector<std::vector<Complex>> hermitian_sphere_rhs(const HermitianSphereParams& p,
                                                       const std::vector<std::vector<Complex>>& z);
CharacteristicSymbol hermitian_sphere_symbol(const HermitianSphereParams& p,
                                             const std::vector<std::vector<Complex>>& z0);

struct DoubleSphereParams {
  std::vector<RealMatrix> omega;   // d1 x d1 skew
  std::vector<RealMatrix> lambda;  // d2 x d2 skew
  double kappa = 0.0;
};

struct DoubleSphereState {
  std::vector<RealVec> u;
  std::vector<RealVec> v;
};

DoubleSphereState double_sphere_rhs(const DoubleSphereParams& p, const DoubleSphereState& s);
std::vector<CharacteristicSymbol> double_sphere_symbols(const DoubleSphereParams& p,
                                                        const DoubleSphereState& s0);

// -- matrix models ------------------------------------------------------------

/// Free flow A T = left * T + T * transpose(right).
struct MatrixPairFlow {
  ComplexMatrix left;
  ComplexMatrix right;
};

/// Rank-2 tensor flow with all four coupling strengths, written with matrix
/// products (square states).
struct GeneralizedMatrixParams {
  std::vector<MatrixPairFlow> flow;
  std::array<double, 4> kappa{};  // k00, k01, k10, k11
};

std::vector<ComplexMatrix> generalized_matrix_rhs(const GeneralizedMatrixParams& p,
                                                  const std::vector<ComplexMatrix>& t);
CharacteristicSymbol generalized_matrix_symbol(const GeneralizedMatrixParams& p,
                                               const std::vector<ComplexMatrix>& t0);

struct LoheMatrixParams {
  std::vector<ComplexMatrix> h;  // Hermitian
  double kappa = 0.0;
};

std::vector<ComplexMatrix> lohe_matrix_rhs(const LoheMatrixParams& p,
                                           const std::vector<ComplexMatrix>& u);
CharacteristicSymbol lohe_matrix_symbol(const LoheMatrixParams& p,
                                        const std::vector<ComplexMatrix>& u0);

struct DoubleMatrixParams {
  std::vector<ComplexMatrix> h;  // Hermitian, first ensemble
  std::vector<ComplexMatrix> g;  // Hermitian, second ensemble
  double kappa = 0.0;
};

struct DoubleMatrixState {
  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> v;
};

DoubleMatrixState double_matrix_rhs(const DoubleMatrixParams& p, const DoubleMatrixState& s);
std::vector<CharacteristicSymbol> double_matrix_symbols(const DoubleMatrixParams& p,
                                                        const DoubleMatrixState& s0);

// -- mixed-rank couplings -----------------------------------------------------

struct KuramotoSphereParams {
  RealVec nu;
  std::vector<RealMatrix> omega;  // d x d skew
  double kappa_theta = 0.0;
  double kappa_x = 0.0;
};

struct KuramotoSphereState {
  RealVec theta;
  std::vector<RealVec> x;
};

KuramotoSphereState kuramoto_sphere_rhs(const KuramotoSphereParams& p, const KuramotoSphereState& s);
std::vector<CharacteristicSymbol> kuramoto_sphere_symbols(const KuramotoSphereParams& p,
                                                          const KuramotoSphereState& s0);

struct SphereSOParams {
  std::vector<RealMatrix> omega;  // d x d skew
  std::vector<RealMatrix> a;      // n x n skew
  double kappa = 0.0;
};

struct SphereSOState {
  std::vector<RealVec> x;
  std::vector<RealMatrix> u;
};

SphereSOState sphere_so_rhs(const SphereSOParams& p, const SphereSOState& s);
std::vector<CharacteristicSymbol> sphere_so_symbols(const SphereSOParams& p, const SphereSOState& s0);

// -- Pauli parametrization of U(2) --------------------------------------------

struct PauliCoordinates {
  double theta = 0.0;
  std::array<double, 4> x{};  // unit 4-vector
};

struct PauliFrequency {
  std::array<double, 3> omega{};
  double nu = 0.0;
};

/// e^{-i theta} (i sum_k x_k sigma_k + x_4 I).
ComplexMatrix pauli_encode(const PauliCoordinates& p);
/// Inverse up to the (theta, x) <-> (theta + pi, -x) identification; the
/// returned branch has the dominant coordinate of x positive (preferring x_4
/// on ties) and theta in (-pi, pi]. Throws ValidationError off U(2).
PauliCoordinates pauli_decode(const ComplexMatrix& u);
/// Maps arbitrary coordinates to the decode branch.
PauliCoordinates pauli_normalize(PauliCoordinates p);
ComplexMatrix pauli_hamiltonian(const PauliFrequency& f);
RealMatrix omega_matrix(const std::array<double, 3>& omega);

// -- frequency construction ----------------------------------------------------

FrequencyTensor freq_from_matrix(const ComplexMatrix& m);
FrequencyTensor freq_from_matrix(const RealMatrix& m);
/// Rank-4 tensor with apply_freq(A, T) = left T + T transpose(right), filled
/// from the four-index definition directly.
FrequencyTensor build_rank2_freq(const ComplexMatrix& left, const ComplexMatrix& right);
FrequencyTensor build_rank2_freq(const RealMatrix& left, const RealMatrix& right);

// -- conversions ----------------------------------------------------------------

DenseTensor tensor_from_vec(const RealVec& x);
DenseTensor tensor_from_cvec(const std::vector<Complex>& z);
DenseTensor tensor_from_matrix(const ComplexMatrix& m);
DenseTensor tensor_from_matrix(const RealMatrix& m);
ComplexMatrix matrix_from_tensor(const DenseTensor& t);
RealVec vec_from_tensor(const DenseTensor& t);

// -- integration helpers --------------------------------------------------------

void axpy(std::vector<ComplexMatrix>& y, double c, const std::vector<ComplexMatrix>& k);
void axpy(std::vector<RealMatrix>& y, double c, const std::vector<RealMatrix>& k);
void axpy(DoubleSphereState& y, double c, const DoubleSphereState& k);
void axpy(DoubleMatrixState& y, double c, const DoubleMatrixState& k);
void axpy(KuramotoSphereState& y, double c, const KuramotoSphereState& k);
void axpy(SphereSOState& y, double c, const SphereSOState& k);
bool state_finite(const DoubleSphereState& y);
bool state_finite(const DoubleMatrixState& y);
bool state_finite(const KuramotoSphereState& y);
bool state_finite(const SphereSOState& y);

template <class State>
struct SampledRun {
  std::vector<double> times;
  std::vector<State> states;
};

SampledRun<RealVec> integrate_kuramoto(const KuramotoParams& p, RealVec theta0, double h,
                                       double t_end, int sample_every);
SampledRun<std::vector<RealVec>> integrate_sphere(const SphereParams& p, std::vector<RealVec> x0,
                                                  double h, double t_end, int sample_every);
SampledRun<DoubleSphereState> integrate_double_sphere(const DoubleSphereParams& p,
                                                      DoubleSphereState s0, double h, double t_end,
                                                      int sample_every);
SampledRun<std::vector<ComplexMatrix>> integrate_lohe_matrix(const LoheMatrixParams& p,
                                                             std::vector<ComplexMatrix> u0, double h,
                                                             double t_end, int sample_every);
SampledRun<KuramotoSphereState> integrate_kuramoto_sphere(const KuramotoSphereParams& p,
                                                          KuramotoSphereState s0, double h,
                                                          double t_end, int sample_every);
SampledRun<SphereSOState> integrate_sphere_so(const SphereSOParams& p, SphereSOState s0, double h,
                                              double t_end, int sample_every);

}  // namespace lohe
