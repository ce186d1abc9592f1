#pragma once

#include "homcone/structure.hpp"
#include "homcone/wishart.hpp"

namespace homcone {

/// Block-diagonal assembly Phi(xi) = diag(phi_1(xi), ..., phi_r(xi)) in
/// Sym(d), d = sum m_i; positive definite iff xi lies in Q_V.
Matrix phi_big(const BlockStructure& s, const Matrix& xi);

/// A matrix realization of the dual cone: a structure on the reversed
/// partition (nu_r, ..., nu_1), nu_k = 1 + sum_{i<k} dim V_ki, together with
/// the linear bijection l: Z_target -> Z_source carrying P_target onto
/// Q_source.  Coordinate matrices are expressed in the two z-bases.
struct DualRealization {
    BlockStructure source;
    BlockStructure target;
    std::vector<int> permutation;   // new coordinate a comes from old permutation[a]
    Matrix l_matrix;                // dim_z x dim_z: target coords -> source coords
    Matrix l_inv_matrix;            // source coords -> target coords

    int ambient_dim() const { return static_cast<int>(permutation.size()); }

    /// l(x) for x in Z_target.
    Matrix to_source(const Matrix& x) const {
        return source.from_coords(l_matrix * target.coords(x));
    }
    /// l^{-1}(xi) for xi in Z_source.
    Matrix to_target(const Matrix& xi) const {
        return target.from_coords(l_inv_matrix * source.coords(xi));
    }
    /// Adjoint l*(x), mapping P_source into Q_target; in orthonormal
    /// coordinates the adjoint is the transpose.
    Matrix adjoint_to_target(const Matrix& x) const {
        return target.from_coords(l_matrix.transpose() * source.coords(x));
    }
    Matrix adjoint_inverse_to_source(const Matrix& m) const {
        return source.from_coords(l_matrix.transpose().inverse() * target.coords(m));
    }
};

/// Builds the dual realization: finds the permutation making
/// rho(w Phi(I)^{-1/2}) Phi(xi) block-diagonal with weights
/// (xi_rr I_{nu_r}, ..., xi_11 I_{nu_1}) on diagonal xi, extracts the target
/// block bases from images of the z-basis, and validates V1-V3.
DualRealization dualize(const BlockStructure& s);

/// Relative residual of the power-function transfer identity
/// Delta^target_{s*}(x) = delta^source_s(l(x)), s* the reversed shape.
double check_strange(const DualRealization& real, const Vector& shape, const Matrix& x);

/// Variance of the P_V-side family computed through the dual realization:
/// (l*)^{-1} o variance_Q^target(s*, l*(x)) o l^{-1}.
ZOperator variance_P_via_dual(const DualRealization& real, const Vector& shape,
                              const Matrix& x);

/// Bundle serialization: cone-spec JSON of both structures plus the
/// permutation and the two coordinate matrices.
std::string dual_to_json(const DualRealization& real);
DualRealization dual_from_json(const std::string& text);

}  // namespace homcone
