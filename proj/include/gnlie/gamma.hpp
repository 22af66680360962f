#ifndef GNLIE_GAMMA_HPP
#define GNLIE_GAMMA_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gnlie/liealg.hpp"

namespace gnlie {

using ComplexMatrix = Eigen::MatrixXcd;

/// Constant Dirac matrices for signature (p,q): gamma^a gamma^b +
/// gamma^b gamma^a = 2 eta^{ab} I on C^N, N = 2^(m/2). Even m <= 6 only.
struct GammaRep {
  SignatureMetric sig;
  int N = 0;
  std::vector<ComplexMatrix> gamma;
};

namespace detail {

inline ComplexMatrix pauli(int k) {
  ComplexMatrix s(2, 2);
  const std::complex<double> i(0.0, 1.0);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hermitian anticommuting generators squaring to +1, by the usual Pauli
/// tensor-product ladder.
inline std::vector<ComplexMatrix> euclidean_generators(int m) {
  const int k = m / 2;
  std::vector<ComplexMatrix> out;
  for (int block = 0; block < k; ++block)
    for (int which = 1; which <= 2; ++which) {
      ComplexMatrix g = ComplexMatrix::Identity(1, 1);
      for (int j = 0; j < k; ++j) {
        ComplexMatrix factor;
        if (j < block)
          factor = pauli(3);
        else if (j == block)
          factor = pauli(which);
        else
          factor = ComplexMatrix::Identity(2, 2);
        g = kron(g, factor);
      }
      out.push_back(g);
    }
  return out;
}

/// Chiral (Weyl) basis for signature (1,3).
inline std::vector<ComplexMatrix> chiral_gamma_13() {
  ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> out;
  ComplexMatrix g0 = ComplexMatrix::Zero(4, 4);
  g0.block(0, 2, 2, 2) = id2;
  g0.block(2, 0, 2, 2) = id2;
  out.push_back(g0);
  for (int k = 1; k <= 3; ++k) {
    ComplexMatrix g = ComplexMatrix::Zero(4, 4);
    g.block(0, 2, 2, 2) = pauli(k);
    g.block(2, 0, 2, 2) = -pauli(k);
    out.push_back(g);
  }
  return out;
}

}  // namespace detail

inline GammaRep build_gamma(int p, int q) {
  const int m = p + q;
  if (m % 2 != 0) throw Error("build_gamma: odd dimension " + std::to_string(m) + " rejected");
  if (m < 2 || m > 6) throw Error("build_gamma: dimension " + std::to_string(m) + " out of range [2,6]");
  GammaRep rep;
  rep.sig = SignatureMetric{p, q};
  rep.N = 1 << (m / 2);
  if (p == 1 && q == 3) {
    rep.gamma = detail::chiral_gamma_13();
    return rep;
  }
  std::vector<ComplexMatrix> herm = detail::euclidean_generators(m);
  const std::complex<double> i(0.0, 1.0);
  for (int a = 0; a < m; ++a) rep.gamma.push_back(a < p ? herm[a] : ComplexMatrix(i * herm[a]));
  return rep;
}

/// Max entrywise deviation from {gamma^a, gamma^b} = 2 eta^{ab} I over all
/// index pairs.
inline double clifford_residual(const GammaRep& rep) {
  double worst = 0.0;
  const int m = rep.sig.dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      ComplexMatrix anti = rep.gamma[a] * rep.gamma[b] + rep.gamma[b] * rep.gamma[a];
      if (a == b) anti -= 2.0 * rep.sig.eta(a) * ComplexMatrix::Identity(rep.N, rep.N);
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace gnlie

#endif
