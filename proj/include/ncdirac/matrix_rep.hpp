#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdirac/canonical.hpp"

namespace ncdirac {

using ConstBindings = std::map<std::string, double>;

/// Truncated oscillator (Fock) basis per spatial axis, tensored with the
/// 4-component spinor space. The oscillator frequency is a numerical
/// scaffold: x = sqrt(hbar/2 m omega)(a + a+), p = i sqrt(m hbar omega/2)
/// (a+ - a), so the canonical commutator is exact below the truncation edge
/// and a guard band keeps every verification away from that edge.
struct FockBasisConfig {
  int dimension = 2;  // spatial dimension, 1 or 2
  int levels = 16;    // Fock levels per axis
  double omega = 1.0;
  int guard = 6;

  void validate() const {
    if (dimension != 1 && dimension != 2)
      throw std::invalid_argument("FockBasisConfig: dimension must be 1 or 2");
    if (levels < 8) throw std::invalid_argument("FockBasisConfig: levels must be >= 8");
    if (guard <= 0 || guard >= levels / 2)
      throw std::invalid_argument("FockBasisConfig: guard must satisfy 0 < g < N/2");
    if (omega <= 0.0) throw std::invalid_argument("FockBasisConfig: omega must be positive");
  }

  int spatial_dim() const {
    int s = 1;
    for (int k = 0; k < dimension; ++k) s *= levels;
    return s;
  }
  int total_dim() const { return 4 * spatial_dim(); }

  std::string tag() const {
    std::ostringstream os;
    os << "fock(d=" << dimension << ",N=" << levels << ",omega=" << omega << ",g=" << guard
       << ")";
    return os.str();
  }
};

struct MatrixOperator {
  Eigen::MatrixXcd mat;
  std::string basis_tag;
};

struct StateVector {
  Eigen::VectorXcd vec;
};

namespace fock {

inline const std::array<Eigen::Matrix4cd, 3>& dirac_alpha() {
  static const std::array<Eigen::Matrix4cd, 3> alphas = [] {
    std::array<Eigen::Matrix4cd, 3> a;
    using C = std::complex<double>;
    Eigen::Matrix2cd s1, s2, s3;
    s1 << C(0, 0), C(1, 0), C(1, 0), C(0, 0);
    s2 << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
    s3 << C(1, 0), C(0, 0), C(0, 0), C(-1, 0);
    const Eigen::Matrix2cd sigma[3] = {s1, s2, s3};
    for (int i = 0; i < 3; ++i) {
      a[i].setZero();
      a[i].block<2, 2>(0, 2) = sigma[i];
      a[i].block<2, 2>(2, 0) = sigma[i];
    }
    return a;
  }();
  return alphas;
}

inline const Eigen::Matrix4cd& dirac_beta() {
  static const Eigen::Matrix4cd beta = [] {
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    b(2, 2) = -1.0;
    b(3, 3) = -1.0;
    return b;
  }();
  return beta;
}

inline Eigen::MatrixXcd ladder(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& m, const std::vector<int>& keep) {
  Eigen::MatrixXcd out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = m(keep[i], keep[j]);
  return out;
}

}  // namespace fock

/// Realizes operator expressions as dense matrices in one fixed basis with
/// one fixed set of constant bindings. realize() is an algebra homomorphism
/// by construction: sums map to matrix sums, factor sequences to products of
/// the per-atom realizations (spinor and spatial tensor slots multiplied
/// independently). Spatial factor products are memoized across calls.
class FockRealizer {
 public:
  FockRealizer(FockBasisConfig basis, ConstBindings bindings, AlgebraContext ctx)
      : basis_(basis), bindings_(std::move(bindings)), ctx_(std::move(ctx)) {
    basis_.validate();
    const double hbar = bound("hbar");
    const double mass = bound("m");
    const int n = basis_.levels;
    Eigen::MatrixXcd a = fock::ladder(n);
    Eigen::MatrixXcd ad = a.adjoint();
    const double xs = std::sqrt(hbar / (2.0 * mass * basis_.omega));
    const double ps = std::sqrt(mass * hbar * basis_.omega / 2.0);
    Eigen::MatrixXcd x1 = xs * (a + ad);
    Eigen::MatrixXcd p1 = std::complex<double>(0, 1) * ps * (ad - a);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    if (basis_.dimension == 1) {
      x_[0] = x1;
      p_[0] = p1;
    } else {
      x_[0] = fock::kron(x1, eye);
      p_[0] = fock::kron(p1, eye);
      x_[1] = fock::kron(eye, x1);
      p_[1] = fock::kron(eye, p1);
    }
  }

  const FockBasisConfig& basis() const { return basis_; }
  const ConstBindings& bindings() const { return bindings_; }
  const AlgebraContext& context() const { return ctx_; }

  /// True when every spatial atom fits the basis dimension (after field
  /// resolution); expressions referencing higher axes cannot be realized.
  bool realizable(const OperatorExpr& e) const {
    OperatorExpr resolved = resolve_fields(e, ctx_);
    for (const auto& [factors, coeff] : resolved.terms())
      for (const Atom& a : factors)
        if ((a.kind == AtomKind::Position || a.kind == AtomKind::Momentum) &&
            a.axis > basis_.dimension)
          return false;
    return true;
  }

  MatrixOperator realize(const OperatorExpr& e) const {
    const int sdim = basis_.spatial_dim();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4 * sdim, 4 * sdim);
    OperatorExpr resolved = resolve_fields(e, ctx_);
    for (const auto& [factors, coeff] : resolved.terms()) {
      std::complex<double> c = coeff.eval(bindings_);
      if (c == std::complex<double>(0.0, 0.0)) continue;
      Eigen::Matrix4cd spin = Eigen::Matrix4cd::Identity();
      FactorSeq spatial_seq;
      for (const Atom& atom : factors) {
        switch (atom.kind) {
          case AtomKind::Alpha: spin = spin * fock::dirac_alpha()[atom.axis - 1]; break;
          case AtomKind::Beta: spin = spin * fock::dirac_beta(); break;
          case AtomKind::Position:
          case AtomKind::Momentum:
            spatial_seq.push_back(atom);
            break;
          default:
            throw std::logic_error("unresolved field atom in realize");
        }
      }
      const Eigen::MatrixXcd& spatial = spatial_product(spatial_seq);
      // acc += c * kron(spin, spatial), written blockwise
      for (int si = 0; si < 4; ++si)
        for (int sj = 0; sj < 4; ++sj) {
          std::complex<double> w = c * spin(si, sj);
          if (w == std::complex<double>(0.0, 0.0)) continue;
          acc.block(si * sdim, sj * sdim, sdim, sdim) += w * spatial;
        }
    }
    return MatrixOperator{std::move(acc), basis_.tag()};
  }

  /// Indices whose every axis Fock index stays at least `guard` levels away
  /// from the truncation edge.
  std::vector<int> kept_indices(int guard = -1) const {
    if (guard < 0) guard = basis_.guard;
    const int n = basis_.levels;
    const int cutoff = n - guard;  // keep Fock index < cutoff
    std::vector<int> keep;
    const int sdim = basis_.spatial_dim();
    for (int idx = 0; idx < 4 * sdim; ++idx) {
      int s = idx % sdim;
      bool ok = true;
      if (basis_.dimension == 1) {
        ok = s < cutoff;
      } else {
        ok = (s / n) < cutoff && (s % n) < cutoff;
      }
      if (ok) keep.push_back(idx);
    }
    return keep;
  }

 private:
  double bound(const std::string& name) const {
    auto it = bindings_.find(name);
    if (it == bindings_.end()) throw std::invalid_argument("unbound constant: " + name);
    return it->second;
  }

  const Eigen::MatrixXcd& axis_matrix(const Atom& a) const {
    if (a.axis > basis_.dimension)
      throw std::invalid_argument("atom " + a.name() + " references axis " +
                                  std::to_string(a.axis) + " in a " +
                                  std::to_string(basis_.dimension) + "-dimensional basis");
    return a.kind == AtomKind::Position ? x_[a.axis - 1] : p_[a.axis - 1];
  }

  const Eigen::MatrixXcd& spatial_product(const FactorSeq& seq) const {
    auto it = spatial_cache_.find(seq);
    if (it != spatial_cache_.end()) return it->second;
    Eigen::MatrixXcd m;
    if (seq.empty()) {
      m = Eigen::MatrixXcd::Identity(basis_.spatial_dim(), basis_.spatial_dim());
    } else if (seq.size() == 1) {
      m = axis_matrix(seq[0]);
    } else {
      FactorSeq head(seq.begin(), seq.end() - 1);
      m = spatial_product(head) * axis_matrix(seq.back());
    }
    return spatial_cache_.emplace(seq, std::move(m)).first->second;
  }

  FockBasisConfig basis_;
  ConstBindings bindings_;
  AlgebraContext ctx_;
  std::array<Eigen::MatrixXcd, 2> x_;
  std::array<Eigen::MatrixXcd, 2> p_;
  mutable std::map<FactorSeq, Eigen::MatrixXcd> spatial_cache_;
};

/// || P (L - R) P || / max(1, || P R P ||) with P the guard projector.
inline double identity_residual(const OperatorExpr& lhs, const OperatorExpr& rhs,
                                const FockRealizer& realizer, int guard = -1) {
  Eigen::MatrixXcd l = realizer.realize(lhs).mat;
  Eigen::MatrixXcd r = realizer.realize(rhs).mat;
  std::vector<int> keep = realizer.kept_indices(guard);
  double num = fock::submatrix(l - r, keep).norm();
  double den = std::max(1.0, fock::submatrix(r, keep).norm());
  return num / den;
}

/// || M - M+ || / max(1, || M ||).
inline double hermiticity_residual(const MatrixOperator& m) {
  double num = (m.mat - m.mat.adjoint()).norm();
  return num / std::max(1.0, m.mat.norm());
}

/// Normalized coherent state x spinor with <x> = x0, <p> = p0. Throws when
/// more than 1e-12 of the occupancy lies beyond level N - g on any axis.
inline StateVector gaussian_packet(const FockBasisConfig& basis, const std::vector<double>& x0,
                                   const std::vector<double>& p0,
                                   const std::array<std::complex<double>, 4>& spinor,
                                   const ConstBindings& bindings) {
  basis.validate();
  if (static_cast<int>(x0.size()) != basis.dimension ||
      static_cast<int>(p0.size()) != basis.dimension)
    throw std::invalid_argument("gaussian_packet: x0/p0 must have one entry per axis");
  const double hbar = bindings.at("hbar");
  const double mass = bindings.at("m");
  const int n = basis.levels;

  auto coherent = [&](double x, double p) {
    std::complex<double> z(x * std::sqrt(mass * basis.omega / (2.0 * hbar)),
                           p / std::sqrt(2.0 * mass * hbar * basis.omega));
    Eigen::VectorXcd v(n);
    std::complex<double> c = std::exp(-0.5 * std::norm(z));
    double kept_below_guard = 0.0;
    for (int k = 0; k < n; ++k) {
      v(k) = c;
      if (k < n - basis.guard) kept_below_guard += std::norm(c);
      c *= z / std::sqrt(static_cast<double>(k + 1));
    }
    double spill = 1.0 - kept_below_guard;
    if (spill >= 1e-12) {
      std::ostringstream os;
      os << "gaussian_packet: occupancy " << spill << " beyond level " << (n - basis.guard);
      throw std::invalid_argument(os.str());
    }
    v.normalize();
    return v;
  };

  Eigen::VectorXcd spatial = coherent(x0[0], p0[0]);
  if (basis.dimension == 2) {
    Eigen::VectorXcd second = coherent(x0[1], p0[1]);
    Eigen::VectorXcd both(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) both(i * n + j) = spatial(i) * second(j);
    spatial = both;
  }

  Eigen::Vector4cd w;
  for (int k = 0; k < 4; ++k) w(k) = spinor[k];
  double wn = w.norm();
  if (wn == 0.0) throw std::invalid_argument("gaussian_packet: zero spinor weights");
  w /= wn;

  StateVector psi;
  psi.vec.resize(4 * spatial.size());
  for (int s = 0; s < 4; ++s) psi.vec.segment(s * spatial.size(), spatial.size()) = w(s) * spatial;
  return psi;
}

/// Time series of expectation values along a unitary evolution.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[obs][step]

  int column(const std::string& name) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return static_cast<int>(k);
    throw std::invalid_argument("trajectory column not found: " + name);
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "t,norm";
    for (const auto& n : names) os << "," << n;
    os << "\n";
    char buf[40];
    auto put = [&](double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os << buf;
    };
    for (std::size_t k = 0; k < times.size(); ++k) {
      put(times[k]);
      os << ",";
      put(norms[k]);
      for (const auto& col : values) {
        os << ",";
        put(col[k]);
      }
      os << "\n";
    }
    return os.str();
  }
};

/// psi(t_k) = exp(-i H k dt / hbar) psi(0) through one spectral
/// decomposition; phases are recomputed from scratch at every step, so there
/// is no accumulation of stepping error and the evolution is exactly
/// unitary up to rounding. Observables are evaluated in blocks.
inline Trajectory evolve(const MatrixOperator& h, const StateVector& psi0, double dt, int steps,
                         const std::vector<std::pair<std::string, MatrixOperator>>& observables,
                         double hbar) {
  double herm = hermiticity_residual(h);
  if (herm > 1e-12) {
    std::ostringstream os;
    os << "evolve: Hamiltonian fails the hermiticity check, residual " << herm;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.mat);
  if (es.info() != Eigen::Success) throw std::runtime_error("evolve: eigendecomposition failed");
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd phi0 = v.adjoint() * psi0.vec;

  const Eigen::Index dim = h.mat.rows();
  Trajectory traj;
  traj.dt = dt;
  for (const auto& [name, op] : observables) traj.names.push_back(name);
  traj.values.assign(observables.size(), std::vector<double>(steps + 1, 0.0));
  traj.times.resize(steps + 1);
  traj.norms.resize(steps + 1);

  const int block = 256;
  Eigen::MatrixXcd phi(dim, block);
  for (int start = 0; start <= steps; start += block) {
    int count = std::min(block, steps + 1 - start);
    for (int t = 0; t < count; ++t) {
      double time = (start + t) * dt;
      for (Eigen::Index r = 0; r < dim; ++r)
        phi(r, t) = phi0(r) * std::exp(std::complex<double>(0.0, -lam(r) * time / hbar));
    }
    Eigen::MatrixXcd states = v * phi.leftCols(count);
    for (int t = 0; t < count; ++t) {
      traj.times[start + t] = (start + t) * dt;
      traj.norms[start + t] = states.col(t).norm();
    }
    for (std::size_t o = 0; o < observables.size(); ++o) {
      Eigen::MatrixXcd y = observables[o].second.mat * states.leftCols(count);
      for (int t = 0; t < count; ++t)
        traj.values[o][start + t] = states.col(t).dot(y.col(t)).real();
    }
  }
  return traj;
}

/// Central-difference residual series r(t) = |d<F>/dt - <RHS>| over the
/// interior steps, with its maximum.
struct EhrenfestResidual {
  std::vector<double> series;
  double max_residual = 0.0;
};

inline EhrenfestResidual ehrenfest_residual(const Trajectory& traj, const std::string& base,
                                            const std::string& rate) {
  const auto& f = traj.values.at(traj.column(base));
  const auto& r = traj.values.at(traj.column(rate));
  if (f.size() < 3) throw std::invalid_argument("ehrenfest_residual: trajectory too short");
  EhrenfestResidual out;
  for (std::size_t k = 1; k + 1 < f.size(); ++k) {
    double deriv = (f[k + 1] - f[k - 1]) / (2.0 * traj.dt);
    double res = std::abs(deriv - r[k]);
    out.series.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

}  // namespace ncdirac
