#ifndef GNLIE_LIEALG_HPP
#define GNLIE_LIEALG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "gnlie/errors.hpp"

namespace gnlie {

using LieMatrix = Eigen::MatrixXd;

/// Standard flat metric of signature (p,q): eta = diag(+1 x p, -1 x q). The
/// p plus signs come first; every index convention downstream hangs off this
/// ordering.
struct SignatureMetric {
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }

  double eta(int a) const { return a < p ? 1.0 : -1.0; }

  LieMatrix matrix() const {
    LieMatrix m = LieMatrix::Zero(dim(), dim());
    for (int a = 0; a < dim(); ++a) m(a, a) = eta(a);
    return m;
  }
};

/// eta-adjoint of M, defined by eta(M^T v, v') = eta(v, M v'). With eta
/// diagonal and self-inverse this is eta * M^t * eta.
inline LieMatrix eta_transpose(const LieMatrix& m, const SignatureMetric& sig) {
  if (m.rows() != sig.dim() || m.cols() != sig.dim())
    throw DimensionError("eta_transpose: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", signature dimension is " +
                         std::to_string(sig.dim()));
  LieMatrix eta = sig.matrix();
  return eta * m.transpose() * eta;
}

/// gl(m,R) = so(p,q) + V + R*I: eta-antisymmetric part, eta-symmetric
/// traceless part, and the pure trace part.
struct ReductiveSplit {
  LieMatrix antisym;
  LieMatrix sym_traceless;
  double trace_scalar = 0.0;

  LieMatrix recompose() const {
    return antisym + sym_traceless +
           trace_scalar * LieMatrix::Identity(antisym.rows(), antisym.cols());
  }
};

inline ReductiveSplit decompose_reductive(const LieMatrix& m, const SignatureMetric& sig) {
  LieMatrix mt = eta_transpose(m, sig);
  ReductiveSplit s;
  s.antisym = 0.5 * (m - mt);
  s.trace_scalar = m.trace() / static_cast<double>(sig.dim());
  s.sym_traceless = 0.5 * (m + mt) - s.trace_scalar * LieMatrix::Identity(m.rows(), m.cols());
  return s;
}

/// Ad_O(M) = O M O^{-1}. Throws on a singular conjugator; the condition
/// number is reported in the message when it is suspiciously large.
inline LieMatrix ad_action(const LieMatrix& o, const LieMatrix& m) {
  if (o.rows() != o.cols() || o.rows() != m.rows() || m.rows() != m.cols())
    throw DimensionError("ad_action: dimension mismatch");
  Eigen::FullPivLU<LieMatrix> lu(o);
  if (!lu.isInvertible()) throw Error("ad_action: conjugating matrix is singular");
  return o * lu.solve(m);
}

/// Scaling-and-squaring Taylor exponential. Accurate to better than 1e-10
/// relative for ||M|| <= 10, which covers every group element this library
/// ever samples.
inline LieMatrix matrix_exp(const LieMatrix& m) {
  const int n = static_cast<int>(m.rows());
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  LieMatrix t = m / std::pow(2.0, squarings);
  LieMatrix term = LieMatrix::Identity(n, n);
  LieMatrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * t) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// ---------------------------------------------------------------------------
// Split-structure projectors
// ---------------------------------------------------------------------------

/// A finite family of operators tested against the split-structure axioms
/// Phi^i Phi^j = delta^{ij} Phi^j and sum_i Phi^i = id.
struct ProjectorFamily {
  std::vector<Eigen::MatrixXd> ops;
};

struct ProjectorReport {
  double max_idempotence_residual = 0.0;  // over all pairs (i,j)
  double max_sum_residual = 0.0;
  bool ok(double tol) const { return max_idempotence_residual <= tol && max_sum_residual <= tol; }
};

inline ProjectorReport verify_projector_family(const ProjectorFamily& fam) {
  if (fam.ops.empty()) throw DimensionError("verify_projector_family: empty family");
  const Eigen::Index n = fam.ops.front().rows();
  for (const auto& op : fam.ops)
    if (op.rows() != n || op.cols() != n)
      throw DimensionError("verify_projector_family: operators differ in dimension");
  ProjectorReport rep;
  for (std::size_t i = 0; i < fam.ops.size(); ++i)
    for (std::size_t j = 0; j < fam.ops.size(); ++j) {
      Eigen::MatrixXd prod = fam.ops[i] * fam.ops[j];
      if (i == j) prod -= fam.ops[j];
      rep.max_idempotence_residual = std::max(rep.max_idempotence_residual,
                                              prod.cwiseAbs().maxCoeff());
    }
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (const auto& op : fam.ops) sum += op;
  sum -= Eigen::MatrixXd::Identity(n, n);
  rep.max_sum_residual = sum.cwiseAbs().maxCoeff();
  return rep;
}

/// The three reductive projectors (onto so(p,q), V and R*I), realized as
/// operators on the m^2-dimensional space of matrices in row-major
/// vectorization.
inline ProjectorFamily reductive_projector_family(const SignatureMetric& sig) {
  const int m = sig.dim();
  const int n = m * m;
  ProjectorFamily fam;
  fam.ops.assign(3, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      LieMatrix basis = LieMatrix::Zero(m, m);
      basis(i, j) = 1.0;
      ReductiveSplit s = decompose_reductive(basis, sig);
      LieMatrix parts[3] = {s.antisym, s.sym_traceless,
                            s.trace_scalar * LieMatrix::Identity(m, m)};
      for (int k = 0; k < 3; ++k)
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c) fam.ops[k](r * m + c, i * m + j) = parts[k](r, c);
    }
  return fam;
}

// ---------------------------------------------------------------------------
// Adjoint-invariance check
// ---------------------------------------------------------------------------

namespace detail {

inline double rng_uniform(std::mt19937_64& gen, double lo, double hi) {
  // 53-bit mantissa construction; identical across standard libraries
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline LieMatrix random_matrix(std::mt19937_64& gen, int m, double scale) {
  LieMatrix r(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = rng_uniform(gen, -scale, scale);
  return r;
}

/// Random element of SO(p,q)^e via the exponential of a random
/// eta-antisymmetric matrix; stays in the identity component.
inline LieMatrix random_group_element(std::mt19937_64& gen, const SignatureMetric& sig) {
  LieMatrix r = random_matrix(gen, sig.dim(), 1.0);
  LieMatrix a = 0.5 * (r - eta_transpose(r, sig));
  return matrix_exp(a);
}

}  // namespace detail

struct AdInvarianceReport {
  double max_so_component = 0.0;      // so(p,q)-part of Ad_O(V), should vanish
  double max_trace_component = 0.0;   // trace parts of Ad_O(V) and Ad_O(A)
  double max_v_component = 0.0;       // V-part of Ad_O(A), A in so(p,q)
  double max_commutation = 0.0;       // P_V(Ad_O M) - Ad_O(P_V M)
  bool ok(double tol) const {
    return max_so_component <= tol && max_trace_component <= tol && max_v_component <= tol &&
           max_commutation <= tol;
  }
};

/// Samples SO(p,q)^e elements and verifies that both so(p,q) and the
/// subspace V of eta-symmetric traceless matrices are adjoint-invariant, and
/// that the V projector commutes with the adjoint action.
inline AdInvarianceReport check_ad_invariance(const SignatureMetric& sig, int samples,
                                              std::uint64_t seed) {
  if (samples < 1) throw Error("check_ad_invariance: sample count must be >= 1");
  std::mt19937_64 gen(seed);
  const int m = sig.dim();
  AdInvarianceReport rep;
  for (int s = 0; s < samples; ++s) {
    LieMatrix o = detail::random_group_element(gen, sig);
    LieMatrix raw = detail::random_matrix(gen, m, 1.0);
    ReductiveSplit parts = decompose_reductive(raw, sig);

    ReductiveSplit adv = decompose_reductive(ad_action(o, parts.sym_traceless), sig);
    rep.max_so_component = std::max(rep.max_so_component, adv.antisym.cwiseAbs().maxCoeff());
    rep.max_trace_component = std::max(rep.max_trace_component, std::abs(adv.trace_scalar));

    ReductiveSplit ada = decompose_reductive(ad_action(o, parts.antisym), sig);
    rep.max_v_component = std::max(rep.max_v_component, ada.sym_traceless.cwiseAbs().maxCoeff());
    rep.max_trace_component = std::max(rep.max_trace_component, std::abs(ada.trace_scalar));

    LieMatrix any = detail::random_matrix(gen, m, 1.0);
    LieMatrix lhs = decompose_reductive(ad_action(o, any), sig).sym_traceless;
    LieMatrix rhs = ad_action(o, decompose_reductive(any, sig).sym_traceless);
    rep.max_commutation = std::max(rep.max_commutation, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace gnlie

#endif
