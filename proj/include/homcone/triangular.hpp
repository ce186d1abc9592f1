#pragma once

#include "homcone/structure.hpp"

namespace homcone {

/// An element of the triangular group H_V: block lower triangular with
/// diagonal blocks t_ll I_{n_l}, t_ll > 0, and off-diagonal blocks in V_lk.
/// Construction validates membership and snaps the entries onto the block
/// subspaces.
class TriangularFactor {
public:
    static TriangularFactor from_matrix(const BlockStructure& s, const Matrix& t,
                                        double tol = 1e-8);
    static TriangularFactor identity(const BlockStructure& s);

    const Matrix& matrix() const { return t_; }
    const BlockStructure& structure() const { return *s_; }
    double diagonal(int k) const;

    TriangularFactor inverse() const;
    TriangularFactor operator*(const TriangularFactor& other) const;

private:
    TriangularFactor(const BlockStructure& s, Matrix t) : s_(&s), t_(std::move(t)) {}

    const BlockStructure* s_;
    Matrix t_;
};

/// One-dimensional representation chi_s(T) = prod t_kk^{2 s_k}.
double character(const Vector& shape, const TriangularFactor& t);

/// Group action rho(T) x = T x T^T on Z_V.
Matrix action(const TriangularFactor& t, const Matrix& x);

/// Adjoint action rho*(T) = pi o rho(T^T).
Matrix dual_action(const TriangularFactor& t, const Matrix& xi);

/// The unique T in H_V with T T^T = x, for x in P_V.
TriangularFactor cholesky(const BlockStructure& s, const Matrix& x);

/// Completion map: the unique positive definite matrix with pi(hat) = xi and
/// hat^{-1} in P_V, computed from the closed-form inverse and inverted.
Matrix hat_completion(const BlockStructure& s, const Matrix& xi);

/// The unique T in H_V with rho*(T) I_N = xi, for xi in Q_V.
TriangularFactor dual_decompose(const BlockStructure& s, const Matrix& xi);

}  // namespace homcone
