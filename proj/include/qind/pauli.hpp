#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace qind {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr Complex I_UNIT{0.0, 1.0};

/// Pauli matrices on a two-dimensional index (mode doublet or internal space).
inline Matrix2c sigma0() { return Matrix2c::Identity(); }
inline Matrix2c sigma1() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix2c sigma2() {
    Matrix2c m;
    m << 0, -I_UNIT, I_UNIT, 0;
    return m;
}
inline Matrix2c sigma3() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

/// Internal (fermion-number) space: basis (boson, fermion).
/// psi raises boson -> fermion, del_psi lowers, fermion_parity = diag(1,-1).
inline Matrix2c psi_raise() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 0) = 1;
    return m;
}
inline Matrix2c psi_lower() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1;
    return m;
}
inline Matrix2c fermion_parity() { return sigma3(); }

/// Kronecker product, row-major convention: (A otimes B)[(ia,ib),(ja,jb)] = A(ia,ja) B(ib,jb).
inline MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Coefficients c such that M = c[0]*1 + c[1]*sigma1 + c[2]*sigma2 + c[3]*sigma3.
inline std::array<Complex, 4> pauli_decompose(const Matrix2c& m) {
    std::array<Complex, 4> c{};
    const Matrix2c s[4] = {sigma0(), sigma1(), sigma2(), sigma3()};
    for (int k = 0; k < 4; ++k) c[k] = (s[k] * m).trace() / 2.0;
    return c;
}

inline Matrix2c pauli_reassemble(const std::array<Complex, 4>& c) {
    return c[0] * sigma0() + c[1] * sigma1() + c[2] * sigma2() + c[3] * sigma3();
}

inline double max_abs(const MatrixXc& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qind
