#include "ctk/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ctk::quantum {

namespace {

constexpr double kHermTol = 1e-12;      // entrywise hermiticity tolerance
constexpr double kDichotomicTol = 1e-10;  // ||A*A - I|| entrywise
constexpr double kCommuteTol = 1e-10;   // spectral norm of cross commutators
constexpr double kJacobiOffTol = 1e-12;  // off-diagonal mass, relative
constexpr int kJacobiMaxSweeps = 60;

void require_same_dim(int a, int b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b));
}

}  // namespace

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_dim(dim_, o.dim_, "matrix sum");
  Matrix r(dim_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_dim(dim_, o.dim_, "matrix difference");
  Matrix r(dim_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_dim(dim_, o.dim_, "matrix product");
  Matrix r(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

Matrix Matrix::operator*(cplx s) const {
  Matrix r(dim_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
  return r;
}

Matrix Matrix::adjoint() const {
  Matrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double Matrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  int dx = x.dim(), dy = y.dim();
  Matrix r(dx * dy);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dx; ++j) {
      cplx xij = x(i, j);
      if (xij == cplx{}) continue;
      for (int k = 0; k < dy; ++k)
        for (int l = 0; l < dy; ++l) r(i * dy + k, j * dy + l) = xij * y(k, l);
    }
  return r;
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  require_same_dim(x.dim(), y.dim(), "commutator");
  return x * y - y * x;
}

std::vector<double> hermitian_eigenvalues(Matrix h) {
  int n = h.dim();
  // Work on the symmetrized matrix; roundoff asymmetry must not accumulate.
  Matrix a = (h + h.adjoint()) * cplx(0.5, 0.0);
  double scale = std::max(1.0, a.frobenius_norm());

  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_mass() <= kJacobiOffTol * scale) break;
    if (sweep == kJacobiMaxSweeps - 1)
      throw NumericalBreakdown("Jacobi eigensolver failed to converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cplx apq = a(p, q);
        double r = std::abs(apq);
        if (r <= 1e-17 * scale) continue;
        cplx omega = apq / r;  // phase factor making the pivot entry real
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        double tau = (aqq - app) / (2.0 * r);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;

        // A <- U^dagger A U with U = I except
        //   U[p][p]=c, U[p][q]=s, U[q][p]=-s*conj(omega), U[q][q]=c*conj(omega).
        cplx conj_omega = std::conj(omega);
        for (int k = 0; k < n; ++k) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * conj_omega * akq;
          a(k, q) = s * akp + c * conj_omega * akq;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * omega * aqk;
          a(q, k) = s * apk + c * omega * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double operator_norm(const Matrix& h) {
  if (!h.is_hermitian(kHermTol))
    throw NonHermitian("operator_norm requires a Hermitian matrix (defect " +
                       std::to_string(h.hermiticity_defect()) + ")");
  double norm = 0.0;
  for (double e : hermitian_eigenvalues(h)) norm = std::max(norm, std::abs(e));
  return norm;
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  if (!m_.is_hermitian(kHermTol))
    throw NonHermitian("hermiticity defect " + std::to_string(m_.hermiticity_defect()));
}

DichotomicObservable::DichotomicObservable(Matrix m) : HermitianOperator(std::move(m)) {
  Matrix sq = matrix() * matrix();
  Matrix dev = sq - Matrix::identity(dim());
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) worst = std::max(worst, std::abs(dev(i, j)));
  if (worst > kDichotomicTol)
    throw Error("not dichotomic: ||A*A - I|| = " + std::to_string(worst));
}

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  if (!m_.is_hermitian(kHermTol))
    throw NonHermitian("density hermiticity defect " + std::to_string(m_.hermiticity_defect()));
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw Error("density trace " + std::to_string(tr) + " != 1");
  double min_eig = hermitian_eigenvalues(m_).front();
  if (min_eig < -1e-10)
    throw Error("density eigenvalue " + std::to_string(min_eig) + " below -1e-10");
}

HermitianOperator scaled_commutator(const HermitianOperator& x, const HermitianOperator& y) {
  Matrix m = commutator(x.matrix(), y.matrix()) * cplx(0.0, 1.0);
  return HermitianOperator(std::move(m));
}

double operator_norm(const HermitianOperator& h) {
  double norm = 0.0;
  for (double e : hermitian_eigenvalues(h.matrix())) norm = std::max(norm, std::abs(e));
  return norm;
}

namespace {

Matrix embed_matrix(const Matrix& op, Side side, int dim_a, int dim_b) {
  if (side == Side::A) {
    if (op.dim() != dim_a) throw DimensionMismatch("side-A operator does not match dim_a");
    return kron(op, Matrix::identity(dim_b));
  }
  if (op.dim() != dim_b) throw DimensionMismatch("side-B operator does not match dim_b");
  return kron(Matrix::identity(dim_a), op);
}

}  // namespace

HermitianOperator local_embed(const HermitianOperator& op, Side side, int dim_a, int dim_b) {
  return HermitianOperator(embed_matrix(op.matrix(), side, dim_a, dim_b));
}

DichotomicObservable local_embed(const DichotomicObservable& op, Side side, int dim_a, int dim_b) {
  return DichotomicObservable(embed_matrix(op.matrix(), side, dim_a, dim_b));
}

BellOperatorBundle bell_operator(const DichotomicObservable& a1, const DichotomicObservable& a2,
                                 const DichotomicObservable& b1, const DichotomicObservable& b2) {
  int d = a1.dim();
  require_same_dim(d, a2.dim(), "bell_operator");
  require_same_dim(d, b1.dim(), "bell_operator");
  require_same_dim(d, b2.dim(), "bell_operator");

  double worst = 0.0;
  for (const auto* a : {&a1, &a2})
    for (const auto* b : {&b1, &b2}) {
      Matrix c = commutator(a->matrix(), b->matrix()) * cplx(0.0, 1.0);
      worst = std::max(worst, operator_norm(HermitianOperator(c)));
    }
  if (worst > kCommuteTol)
    throw CrossCommutationViolated("max ||[A_i, B_j]|| = " + std::to_string(worst));

  Matrix bell = (a1.matrix() * (b1.matrix() + b2.matrix()) +
                 a2.matrix() * (b1.matrix() - b2.matrix())) *
                cplx(0.5, 0.0);
  bell = (bell + bell.adjoint()) * cplx(0.5, 0.0);

  HermitianOperator ma = scaled_commutator(a1, a2);
  HermitianOperator mb = scaled_commutator(b1, b2);
  Matrix mab = ma.matrix() * mb.matrix();
  mab = (mab + mab.adjoint()) * cplx(0.5, 0.0);

  return BellOperatorBundle{a1, a2, b1, b2, HermitianOperator(std::move(bell)), std::move(ma),
                            std::move(mb), HermitianOperator(std::move(mab))};
}

double landau_residual(const BellOperatorBundle& bundle) {
  const Matrix& bell = bundle.bell_op.matrix();
  Matrix lhs = bell * bell;
  Matrix rhs = Matrix::identity(bell.dim()) -
               commutator(bundle.a1.matrix(), bundle.a2.matrix()) *
                   commutator(bundle.b1.matrix(), bundle.b2.matrix()) * cplx(0.25, 0.0);
  Matrix diff = lhs - rhs;
  diff = (diff + diff.adjoint()) * cplx(0.5, 0.0);
  return operator_norm(diff);
}

double chsh_expectation(const DensityOperator& rho, const BellOperatorBundle& bundle) {
  require_same_dim(rho.dim(), bundle.bell_op.dim(), "chsh_expectation");
  cplx v = (rho.matrix() * bundle.bell_op.matrix()).trace();
  if (std::abs(v.imag()) > 1e-9)
    throw Error("trace(rho B) has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

IncompatibilityVerdict local_incompatibility_criterion(const DichotomicObservable& bold_a1,
                                                       const DichotomicObservable& bold_a2,
                                                       const DichotomicObservable& bold_b1,
                                                       const DichotomicObservable& bold_b2) {
  IncompatibilityVerdict v;
  v.norm_a = operator_norm(scaled_commutator(bold_a1, bold_a2));
  v.norm_b = operator_norm(scaled_commutator(bold_b1, bold_b2));
  v.violates = v.norm_a > kCommuteTol && v.norm_b > kCommuteTol;

  int da = bold_a1.dim(), db = bold_b1.dim();
  BellOperatorBundle bundle = bell_operator(
      local_embed(bold_a1, Side::A, da, db), local_embed(bold_a2, Side::A, da, db),
      local_embed(bold_b1, Side::B, da, db), local_embed(bold_b2, Side::B, da, db));
  v.bell_norm = operator_norm(bundle.bell_op);
  return v;
}

JointDistribution quantum_context_distribution(const DensityOperator& rho,
                                               const DichotomicObservable& a,
                                               const DichotomicObservable& b) {
  require_same_dim(rho.dim(), a.dim(), "quantum_context_distribution");
  require_same_dim(rho.dim(), b.dim(), "quantum_context_distribution");
  double cn = operator_norm(HermitianOperator(commutator(a.matrix(), b.matrix()) * cplx(0.0, 1.0)));
  if (cn > kCommuteTol)
    throw NotCommuting("||[A, B]|| = " + std::to_string(cn));

  int d = rho.dim();
  Matrix id = Matrix::identity(d);
  std::vector<double> cells;
  cells.reserve(4);
  for (int x : {-1, +1}) {
    Matrix ea = (id + a.matrix() * static_cast<double>(x)) * cplx(0.5, 0.0);
    for (int y : {-1, +1}) {
      Matrix eb = (id + b.matrix() * static_cast<double>(y)) * cplx(0.5, 0.0);
      cplx p = (rho.matrix() * ea * eb).trace();
      cells.push_back(p.real());
    }
  }
  return JointDistribution(2, std::move(cells));
}

CyclicSystem quantum_system(const DensityOperator& rho, const DichotomicObservable& a1,
                            const DichotomicObservable& a2, const DichotomicObservable& b1,
                            const DichotomicObservable& b2) {
  const DichotomicObservable* as[2] = {&a1, &a2};
  const DichotomicObservable* bs[2] = {&b1, &b2};
  std::vector<PairwiseStats> stats;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      stats.push_back(moments_from_cells(quantum_context_distribution(rho, *as[i], *bs[j])));
  return CyclicSystem(stats[0], stats[1], stats[2], stats[3]);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  double s = 0.0;
  for (double e : hermitian_eigenvalues(rho.matrix() - sigma.matrix())) s += std::abs(e);
  return 0.5 * s;
}

double state_setting_dependence(const std::vector<DensityOperator>& family) {
  if (family.size() < 2) throw Error("state_setting_dependence needs at least two settings");
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      worst = std::max(worst, trace_distance(family[i], family[j]));
  return worst;
}

Matrix pauli_x() {
  Matrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

DichotomicObservable polarization_observable(double theta) {
  Matrix m = pauli_z() * std::cos(2.0 * theta) + pauli_x() * std::sin(2.0 * theta);
  return DichotomicObservable(std::move(m));
}

DensityOperator singlet_state() {
  // (|01> - |10>)/sqrt(2)
  Matrix rho(4);
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = -0.5;
  rho(2, 1) = -0.5;
  return DensityOperator(std::move(rho));
}

std::array<double, 2> canonical_angles_a() { return {0.0, std::numbers::pi / 4.0}; }
std::array<double, 2> canonical_angles_b() {
  return {std::numbers::pi / 8.0, 3.0 * std::numbers::pi / 8.0};
}

namespace {

Matrix pure_state_matrix(const std::vector<cplx>& v) {
  Matrix m(static_cast<int>(v.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      m(i, j) = v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
  return m;
}

}  // namespace

DensityOperator Scenario::state_for(int i, int j) const {
  if (mode != ScenarioMode::Drift) return singlet_state();
  double theta = angles_a[static_cast<std::size_t>(i - 1)];
  double phi = angles_b[static_cast<std::size_t>(j - 1)];
  // Alice's drift component follows Bob's setting and vice versa.
  Matrix va = pure_state_matrix({std::cos(phi), std::sin(phi)});
  Matrix wb = pure_state_matrix({std::cos(theta), std::sin(theta)});
  Matrix drift = kron(va, wb);
  Matrix mixed = singlet_state().matrix() * (1.0 - drift_epsilon) + drift * drift_epsilon;
  return DensityOperator(std::move(mixed));
}

DichotomicObservable Scenario::observable_a(int i, int j) const {
  double theta = angles_a[static_cast<std::size_t>(i - 1)];
  if (mode == ScenarioMode::Crosstalk)
    theta += crosstalk_strength * angles_b[static_cast<std::size_t>(j - 1)];
  return local_embed(polarization_observable(theta), Side::A, 2, 2);
}

DichotomicObservable Scenario::observable_b(int i, int j) const {
  double phi = angles_b[static_cast<std::size_t>(j - 1)];
  if (mode == ScenarioMode::Crosstalk)
    phi += crosstalk_strength * angles_a[static_cast<std::size_t>(i - 1)];
  return local_embed(polarization_observable(phi), Side::B, 2, 2);
}

JointDistribution Scenario::context_distribution(int i, int j) const {
  return quantum_context_distribution(state_for(i, j), observable_a(i, j), observable_b(i, j));
}

CyclicSystem Scenario::system() const {
  std::vector<PairwiseStats> stats;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) stats.push_back(moments_from_cells(context_distribution(i, j)));
  return CyclicSystem(stats[0], stats[1], stats[2], stats[3]);
}

Matrix random_hermitian(int dim, rng::SplitMix64& stream) {
  Matrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = cplx(stream.next_gaussian(), stream.next_gaussian());
  return (g + g.adjoint()) * cplx(0.5, 0.0);
}

Matrix random_unitary(int dim, rng::SplitMix64& stream) {
  // Gram-Schmidt on a complex Gaussian matrix; two passes for stability.
  std::vector<std::vector<cplx>> cols(static_cast<std::size_t>(dim),
                                      std::vector<cplx>(static_cast<std::size_t>(dim)));
  for (auto& col : cols)
    for (auto& v : col) v = cplx(stream.next_gaussian(), stream.next_gaussian());

  auto dot = [dim](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx s = 0.0;
    for (int k = 0; k < dim; ++k)
      s += std::conj(x[static_cast<std::size_t>(k)]) * y[static_cast<std::size_t>(k)];
    return s;
  };

  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < c; ++p) {
        cplx proj = dot(cols[p], cols[c]);
        for (int k = 0; k < dim; ++k)
          cols[c][static_cast<std::size_t>(k)] -= proj * cols[p][static_cast<std::size_t>(k)];
      }
    double nrm = std::sqrt(dot(cols[c], cols[c]).real());
    if (nrm < 1e-8) throw NumericalBreakdown("degenerate Gaussian matrix in random_unitary");
    for (auto& v : cols[c]) v /= nrm;
  }

  Matrix u(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) u(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return u;
}

namespace {

DichotomicObservable dichotomic_from_basis(const Matrix& u, rng::SplitMix64& stream) {
  int dim = u.dim();
  std::vector<double> signs(static_cast<std::size_t>(dim));
  bool saw_plus = false, saw_minus = false;
  for (auto& s : signs) {
    s = stream.next_double() < 0.5 ? -1.0 : 1.0;
    (s > 0 ? saw_plus : saw_minus) = true;
  }
  if (!saw_plus) signs.back() = 1.0;
  if (!saw_minus) signs.back() = -1.0;

  Matrix d(dim);
  for (int i = 0; i < dim; ++i) d(i, i) = signs[static_cast<std::size_t>(i)];
  Matrix m = u * d * u.adjoint();
  m = (m + m.adjoint()) * cplx(0.5, 0.0);
  return DichotomicObservable(std::move(m));
}

}  // namespace

DichotomicObservable random_dichotomic(int dim, rng::SplitMix64& stream) {
  return dichotomic_from_basis(random_unitary(dim, stream), stream);
}

DichotomicObservable random_dichotomic_in_basis(const Matrix& basis, rng::SplitMix64& stream) {
  return dichotomic_from_basis(basis, stream);
}

DensityOperator random_density(int dim, rng::SplitMix64& stream) {
  Matrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(stream.next_gaussian(), stream.next_gaussian());
  Matrix w = g * g.adjoint();
  w = (w + w.adjoint()) * cplx(0.5, 0.0);
  double tr = w.trace().real();
  return DensityOperator(w * (1.0 / tr));
}

QuadrupleWithState random_nonlocal_quadruple(rng::SplitMix64& stream) {
  // Four qubit factors ordered (a, x, b, y); Alice holds (a, x), Bob (b, y).
  // A_i acts on a and y, B_j on x and b, so both sides' observables are
  // tensor-nontrivial across the bipartition yet commute factor by factor.
  Matrix i2 = Matrix::identity(2);
  auto build_a = [&](const DichotomicObservable& head, const DichotomicObservable& tail) {
    return DichotomicObservable(kron(kron(kron(head.matrix(), i2), i2), tail.matrix()));
  };
  auto build_b = [&](const DichotomicObservable& mid1, const DichotomicObservable& mid2) {
    return DichotomicObservable(kron(kron(kron(i2, mid1.matrix()), mid2.matrix()), i2));
  };

  DichotomicObservable a1 = build_a(random_dichotomic(2, stream), random_dichotomic(2, stream));
  DichotomicObservable a2 = build_a(random_dichotomic(2, stream), random_dichotomic(2, stream));
  DichotomicObservable b1 = build_b(random_dichotomic(2, stream), random_dichotomic(2, stream));
  DichotomicObservable b2 = build_b(random_dichotomic(2, stream), random_dichotomic(2, stream));
  DensityOperator rho = random_density(16, stream);
  return QuadrupleWithState{std::move(rho), std::move(a1), std::move(a2), std::move(b1),
                            std::move(b2)};
}

}  // namespace ctk::quantum
