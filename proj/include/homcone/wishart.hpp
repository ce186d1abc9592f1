#pragma once

#include <optional>
#include <vector>

#include "homcone/structure.hpp"

namespace homcone {

/// Which Riesz/Wishart family a shape parameter belongs to: side P means the
/// family supported on the closure of P_V (Gindikin set Xi), side Q the one
/// supported on the closure of Q_V (set X).
enum class Side { P, Q };

/// Result of classifying a shape vector within the Gindikin set of a side.
/// epsilon, when present, is the unique stratum indicator in {0,1}^r; the
/// family is nondegenerate (not supported on a hyperplane) iff all s_k > 0.
struct GindikinClass {
    Side side = Side::Q;
    std::optional<std::vector<int>> epsilon;
    bool nondegenerate = false;

    bool in_set() const { return epsilon.has_value(); }
};

/// All stratum indicators whose defining (in)equalities hold for s; the union
/// is disjoint, so at most one match is possible.  Equalities are tested with
/// absolute tolerance 1e-12.
std::vector<std::vector<int>> gindikin_matches(const BlockStructure& s, Side side,
                                               const Vector& shape);

GindikinClass gindikin(const BlockStructure& s, Side side, const Vector& shape);

/// Laplace transforms of the Riesz measures: L on the Q_V-side family is
/// Delta_{-s}(theta) for theta in P_V; on the P_V side delta_{-s}(xi).
double laplace_Q(const BlockStructure& s, const Vector& shape, const Matrix& theta);
double laplace_P(const BlockStructure& s, const Vector& shape, const Matrix& xi);

/// Mean of the Q_V-side family member with natural parameter theta in P_V.
Matrix mean_Q(const BlockStructure& s, const Vector& shape, const Matrix& theta);

/// Inverse of the mean map on Q_V, in closed form:
/// psi_s(m) = s_r phi_r*(phi_r(m)^{-1})
///          + sum_{i<r} s_i (phi_i*(phi_i(m)^{-1}) - phi_i_red*(phi_i_red(m)^{-1})).
Matrix inverse_mean_Q(const BlockStructure& s, const Vector& shape, const Matrix& m);

/// Completion formula: hat(m)^{-1} = psi_n(m) with n the block sizes; the
/// inverse of the bijection y -> pi(y^{-1}) from P_V onto Q_V.
Matrix lauritzen(const BlockStructure& s, const Matrix& m);

/// A self-adjoint linear operator on Z_V stored densely in z-basis
/// coordinates.
class ZOperator {
public:
    ZOperator(const BlockStructure& s, Matrix coords)
        : s_(&s), coords_(std::move(coords)) {}

    const Matrix& coords() const { return coords_; }
    const BlockStructure& structure() const { return *s_; }

    Matrix apply(const Matrix& x) const {
        return s_->from_coords(coords_ * s_->coords(x));
    }
    double min_eigenvalue() const;
    double symmetry_residual() const { return (coords_ - coords_.transpose()).norm(); }

private:
    const BlockStructure* s_;
    Matrix coords_;
};

/// Variance function of the Q_V-side Wishart family at mean m:
/// pi o { (n_1/s_1) rho(hat m)
///        + sum_{i>=2} (n_i/s_i - n_{i-1}/s_{i-1}) rho(hat m - [(hat m^{-1})_{1:i-1}]^{-1}_0) }.
ZOperator variance_Q(const BlockStructure& s, const Vector& shape, const Matrix& m);

/// The rearranged three-term form specific to the Vinberg structure; must
/// agree with variance_Q there.
ZOperator variance_Q_alt_vinberg(const BlockStructure& s, const Vector& shape, const Matrix& m);

/// Variance function of the P_V-side family at mean x, via x = T T^T:
/// (n_r/s_r) rho(T) rho*(T)
/// + sum_{k<r} (n_k/s_k - n_{k+1}/s_{k+1}) rho(T) rho(J_k) rho*(T).
ZOperator variance_P(const BlockStructure& s, const Vector& shape, const Matrix& x);

}  // namespace homcone
