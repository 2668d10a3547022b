#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ctk/errors.hpp"
#include "ctk/probability.hpp"
#include "ctk/rng.hpp"

namespace ctk::quantum {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions in this toolkit stay
/// at or below 16, so no effort is spent on blocking or sparsity.
class Matrix {
 public:
  explicit Matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw DimensionMismatch("matrix dimension must be positive");
  }

  static Matrix identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(cplx s) const;
  Matrix operator*(double s) const { return *this * cplx(s, 0.0); }

  Matrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// Largest entrywise deviation from the adjoint.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

 private:
  int dim_;
  std::vector<cplx> a_;
};

Matrix kron(const Matrix& x, const Matrix& y);

/// XY - YX. Throws DimensionMismatch.
Matrix commutator(const Matrix& x, const Matrix& y);

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi rotations
/// (off-diagonal mass driven below 1e-12 relative to the Frobenius norm).
/// The input is symmetrized before iterating; callers validate hermiticity.
std::vector<double> hermitian_eigenvalues(Matrix h);

/// Spectral norm of a Hermitian matrix; equals sup over unit psi of
/// |<psi|H|psi>|. Throws NonHermitian when the input fails the 1e-12
/// entrywise hermiticity check.
double operator_norm(const Matrix& h);

/// Hermitian-validated operator (entrywise tolerance 1e-12).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  Matrix m_;
};

/// Observable with spectrum in {-1, +1}: validates A*A = I within 1e-10.
class DichotomicObservable : public HermitianOperator {
 public:
  explicit DichotomicObservable(Matrix m);
};

/// Hermitian, unit trace within 1e-10, eigenvalues >= -1e-10.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  Matrix m_;
};

/// i[X, Y]; Hermitian by construction, which the wrapper re-checks.
HermitianOperator scaled_commutator(const HermitianOperator& x, const HermitianOperator& y);

double operator_norm(const HermitianOperator& h);

enum class Side { A, B };

/// Kronecker embedding onto a bipartite space: side A gives op (x) I_dB,
/// side B gives I_dA (x) op.
HermitianOperator local_embed(const HermitianOperator& op, Side side, int dim_a, int dim_b);
DichotomicObservable local_embed(const DichotomicObservable& op, Side side, int dim_a, int dim_b);

/// The CHSH quadruple together with the derived operators: the Bell operator
/// (1/2)[A1(B1+B2) + A2(B1-B2)], the commutator observables M_A = i[A1,A2]
/// and M_B = i[B1,B2], and their product M_AB.
struct BellOperatorBundle {
  DichotomicObservable a1, a2, b1, b2;
  HermitianOperator bell_op;
  HermitianOperator commutator_a;
  HermitianOperator commutator_b;
  HermitianOperator product;
};

/// Builds the bundle. Throws CrossCommutationViolated when any ||[A_i,B_j]||
/// exceeds 1e-10 (spectral norm) and DimensionMismatch on unequal dims.
BellOperatorBundle bell_operator(const DichotomicObservable& a1, const DichotomicObservable& a2,
                                 const DichotomicObservable& b1, const DichotomicObservable& b2);

/// Spectral norm of bell_op^2 - (I - (1/4)[A1,A2][B1,B2]); at most 1e-9 for
/// every valid bundle.
double landau_residual(const BellOperatorBundle& bundle);

/// trace(rho * bell_op); the CHSH value is twice this (the Bell operator
/// carries the 1/2 normalization).
double chsh_expectation(const DensityOperator& rho, const BellOperatorBundle& bundle);

struct IncompatibilityVerdict {
  bool violates = false;   // both local commutators nonzero (norms > 1e-10)
  double bell_norm = 0.0;  // ||bell_op|| of the embedded bundle
  double norm_a = 0.0;     // ||i[bold_A1, bold_A2]||
  double norm_b = 0.0;
};

/// Local incompatibility criterion on a compound system: the per-side
/// operators are embedded as A (x) I and I (x) B, and `violates` holds
/// exactly when the embedded Bell operator norm exceeds 1.
IncompatibilityVerdict local_incompatibility_criterion(const DichotomicObservable& bold_a1,
                                                       const DichotomicObservable& bold_a2,
                                                       const DichotomicObservable& bold_b1,
                                                       const DichotomicObservable& bold_b2);

/// p(x, y) = trace(rho E^A(x) E^B(y)) with spectral projectors (I +- A)/2.
/// Throws NotCommuting when ||[A, B]|| > 1e-10.
JointDistribution quantum_context_distribution(const DensityOperator& rho,
                                               const DichotomicObservable& a,
                                               const DichotomicObservable& b);

/// The four-context system generated by a fixed state and quadruple;
/// per-context stats are analytic (n_trials = 0).
CyclicSystem quantum_system(const DensityOperator& rho, const DichotomicObservable& a1,
                            const DichotomicObservable& a2, const DichotomicObservable& b1,
                            const DichotomicObservable& b2);

/// (1/2)||rho - sigma||_1.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Max over pairs of trace distances; 0 within 1e-10 iff the family is
/// setting-independent. Requires at least two members.
double state_setting_dependence(const std::vector<DensityOperator>& family);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Photon-polarization convention: A(theta) = cos(2 theta) sigma_z +
/// sin(2 theta) sigma_x. The +1 eigenvector is (cos theta, sin theta).
DichotomicObservable polarization_observable(double theta);

/// |psi-><psi-| on C^2 (x) C^2.
DensityOperator singlet_state();

/// Canonical settings saturating the CHSH quantum maximum with the singlet:
/// theta in {0, pi/4}, phi in {pi/8, 3 pi/8}.
std::array<double, 2> canonical_angles_a();
std::array<double, 2> canonical_angles_b();

enum class ScenarioMode { Clean, Crosstalk, Drift };

/// Setting-indexed measurement scenario on the 2x2 photon pair.
///
/// Clean: fixed singlet state, local observables A(theta_i) (x) I and
/// I (x) A(phi_j); marginally consistent by quantum mechanics.
/// Crosstalk: each side's analyzer angle is shifted by the opposite side's
/// setting, a(theta_i + strength*phi_j), b(phi_j + strength*theta_i).
/// Drift: observables stay local but the prepared state acquires a
/// setting-dependent component, rho_ij = (1-eps) singlet +
/// eps |v(phi_j)><v(phi_j)| (x) |w(theta_i)><w(theta_i)| with v, w the +1
/// eigenvectors of the polarization observables; a phenomenological stand-in
/// for source disturbance by the analyzer configuration.
struct Scenario {
  ScenarioMode mode = ScenarioMode::Clean;
  std::array<double, 2> angles_a = canonical_angles_a();
  std::array<double, 2> angles_b = canonical_angles_b();
  double drift_epsilon = 0.0;
  double crosstalk_strength = 0.0;

  DensityOperator state_for(int i, int j) const;
  DichotomicObservable observable_a(int i, int j) const;
  DichotomicObservable observable_b(int i, int j) const;
  JointDistribution context_distribution(int i, int j) const;
  CyclicSystem system() const;
};

// Randomized instances for property suites. All draws come from the caller's
// stream, so instances are reproducible and independent across indices.

Matrix random_hermitian(int dim, rng::SplitMix64& stream);
Matrix random_unitary(int dim, rng::SplitMix64& stream);
/// Random +-1-spectrum observable with both signs present (never +-I).
DichotomicObservable random_dichotomic(int dim, rng::SplitMix64& stream);
/// Random dichotomic diagonal in the given unitary's column basis; two draws
/// with the same basis commute.
DichotomicObservable random_dichotomic_in_basis(const Matrix& basis, rng::SplitMix64& stream);
DensityOperator random_density(int dim, rng::SplitMix64& stream);

struct QuadrupleWithState {
  DensityOperator rho;
  DichotomicObservable a1, a2, b1, b2;
};

/// Cross-commuting quadruple on a 16-dimensional four-factor space in which
/// every observable acts nontrivially on both sides of the (Alice | Bob)
/// bipartition, plus a random state. Exercises no-signaling for nonlocal
/// observables.
QuadrupleWithState random_nonlocal_quadruple(rng::SplitMix64& stream);

}  // namespace ctk::quantum
