#pragma once

#include "homcone/structure.hpp"

namespace homcone {

/// Basic quadratic map q_i: W_i -> Z_V, w -> w w^T, with w given by its
/// m_i coordinates in the domain basis of W_i.
Matrix quadratic_map(const BlockStructure& s, int i, const Vector& w);

/// The m_i x m_i symmetric form of q_i on the dual: vc(x)^T phi_i(xi) vc(x)
/// = <xi, q_i(x)> for all x in W_i.
Matrix phi(const BlockStructure& s, int i, const Matrix& xi);

/// phi with the first row and column removed, i.e. the form of the reduced
/// column space (zero in the (i,i) slot).  For i = r-1 this is 0 x 0.
Matrix phi_reduced(const BlockStructure& s, int i, const Matrix& xi);

/// Adjoints with respect to the trace inner products:
/// <xi, phi_adjoint(X)> = tr(phi_i(xi) X).
Matrix phi_adjoint(const BlockStructure& s, int i, const Matrix& X);
Matrix phi_reduced_adjoint(const BlockStructure& s, int i, const Matrix& X);

/// Open-cone membership.  P_V uses positivity of the leading block minors,
/// Q_V positivity of det phi_i for all i, with tolerance 1e-12 scaled by the
/// matrix magnitude.
bool in_cone(const BlockStructure& s, const Matrix& x);
bool in_dual_cone(const BlockStructure& s, const Matrix& xi);

/// Generalized power function on P_V, via leading principal minors:
/// Delta_s(x) = (det x)^{s_r/n_r} prod_k (det x_{1:k})^{s_k/n_k - s_{k+1}/n_{k+1}}.
double power_cone(const BlockStructure& s, const Vector& shape, const Matrix& x);

/// Generalized power function on Q_V:
/// delta_s(xi) = prod_i (det phi_i(xi) / (n_i det phi_reduced_i(xi)))^{s_i}.
double power_dual(const BlockStructure& s, const Vector& shape, const Matrix& xi);

/// Analytic gradient of log Delta_s, a weighted sum of projected zero-padded
/// inverses of leading blocks.
Matrix grad_log_power_cone(const BlockStructure& s, const Vector& shape, const Matrix& x);

/// Analytic gradient of log delta_s, assembled from directional derivatives
/// of the log-determinants along the z-basis.
Matrix grad_log_power_dual(const BlockStructure& s, const Vector& shape, const Matrix& xi);

}  // namespace homcone
