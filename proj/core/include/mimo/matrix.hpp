#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mimo {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// |v|^2 without the hypot() detour std::norm takes for floating types.
inline double abs2(const cplx& v) noexcept { return v.real() * v.real() + v.imag() * v.imag(); }

// Number of complex multiply-add pairs spent by a computation.
using FlopCount = std::uint64_t;

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  CVector column(std::size_t c) const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

// A*B. Adds rows(A)*cols(A)*cols(B) to *flops when given.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, FlopCount* flops = nullptr);

// A*v.
CVector multiply(const ComplexMatrix& a, std::span<const cplx> v, FlopCount* flops = nullptr);

// A^H*v without forming A^H.
CVector adjoint_multiply(const ComplexMatrix& a, std::span<const cplx> v, FlopCount* flops = nullptr);

double frobenius_norm(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

// ||a - b||_F / max(||b||_F, floor)
double relative_difference(const ComplexMatrix& a, const ComplexMatrix& b, double floor = 1e-300);

double squared_norm(std::span<const cplx> v) noexcept;
double norm(std::span<const cplx> v) noexcept;
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // a^H b

CVector add(std::span<const cplx> a, std::span<const cplx> b);
CVector subtract(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace mimo
