// Reference implementations used only by the test suites. They share no code with the
// library beyond the matrix container.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mimo/matrix.hpp"

namespace oracle {

using mimo::ComplexMatrix;
using mimo::CVector;
using mimo::cplx;

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

inline CVector random_vector(std::mt19937_64& rng, std::size_t n, double var = 1.0) {
  std::normal_distribution<double> nd(0.0, std::sqrt(var / 2.0));
  CVector v(n);
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

// Plain triple loop.
inline ComplexMatrix product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  return out;
}

inline CVector product(const ComplexMatrix& a, const CVector& v) {
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) out[i] += a(i, l) * v[l];
  return out;
}

inline ComplexMatrix herm(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline double fro(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline double fro_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

inline double vec_diff(const CVector& a, const CVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

inline double sq(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

inline ComplexMatrix eye(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

inline ComplexMatrix inverse(const ComplexMatrix& a) { return from_eigen(to_eigen(a).inverse()); }

// Largest eigenvalue of a Hermitian matrix.
inline double max_eigenvalue(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
  return es.eigenvalues().maxCoeff();
}

// Gram matrix with a controlled spectrum: V diag(ev) V^H with a random unitary V.
inline ComplexMatrix gram_with_spectrum(std::mt19937_64& rng, const std::vector<double>& ev) {
  const std::size_t k = ev.size();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(to_eigen(random_matrix(rng, k, k)));
  Eigen::MatrixXcd v = qr.householderQ();
  Eigen::VectorXcd d(k);
  for (std::size_t i = 0; i < k; ++i) d(i) = ev[i];
  Eigen::MatrixXcd c = v * d.asDiagonal() * v.adjoint();
  c = 0.5 * (c + c.adjoint()).eval();
  return from_eigen(c);
}

// Nearest alphabet point by exhaustive search with the smaller-real-then-smaller-imag tie rule.
inline cplx nearest(cplx v, const std::vector<cplx>& pts) {
  cplx best = pts.front();
  double bd = std::norm(v - best);
  for (const auto& p : pts) {
    const double d = std::norm(v - p);
    if (d < bd - 1e-12 ||
        (std::abs(d - bd) <= 1e-12 &&
         (p.real() < best.real() - 1e-12 ||
          (std::abs(p.real() - best.real()) <= 1e-12 && p.imag() < best.imag())))) {
      best = p;
      bd = d;
    }
  }
  return best;
}

// Exhaustive minimum of ||z - R x||^2 over Omega^K.
struct Exhaustive {
  CVector x;
  double cost = 0.0;
};

inline Exhaustive exhaustive_ml(const CVector& z, const ComplexMatrix& r, const std::vector<cplx>& pts) {
  const std::size_t k = z.size();
  const std::size_t m = pts.size();
  std::vector<std::size_t> idx(k, 0);
  Exhaustive best{CVector(k), INFINITY};
  for (;;) {
    CVector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = pts[idx[i]];
    CVector rx = product(r, x);
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) cost += std::norm(z[i] - rx[i]);
    if (cost < best.cost) best = {x, cost};
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < m) break;
      idx[pos] = 0;
      if (pos == 0) return best;
    }
    if (k == 0) return best;
  }
}

}  // namespace oracle
