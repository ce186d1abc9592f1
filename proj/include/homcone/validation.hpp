#pragma once

#include <functional>
#include <string>
#include <vector>

#include "homcone/structure.hpp"
#include "homcone/wishart.hpp"

namespace homcone {

/// Central-difference gradient of a scalar field on Z_V along the z-basis.
/// Error is O(h^2) on smooth fields.
Matrix fd_gradient(const BlockStructure& s, const std::function<double(const Matrix&)>& f,
                   const Matrix& point, double h);

/// Central-difference Jacobian of a Z_V-valued field, as a ZOperator.
ZOperator fd_jacobian(const BlockStructure& s,
                      const std::function<Matrix(const Matrix&)>& g, const Matrix& point,
                      double h);

/// Step size used by the library's finite-difference oracles.
inline double fd_step(const Matrix& point) {
    return 1e-5 * (1.0 + point.cwiseAbs().maxCoeff());
}

/// An executable reproduction of a published counterexample computation.
struct FixtureReport {
    struct Line {
        std::string label;
        double computed = 0.0;
        double expected = 0.0;
        double tolerance = 1e-12;  // absolute; targets are integer-valued
    };
    std::string name;
    std::vector<Line> lines;

    bool pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

/// Half-diagonal triangular product X /\ Y = LX Y + Y LX^T, where X = LX + LX^T
/// with LX lower triangular.
Matrix triangle_product(const Matrix& x, const Matrix& y);

/// The projected bilinear product A . B = proj(AB) of the 3x3 ambient algebra
/// with vanishing (2,3) and (3,2) entries.
Matrix projected_product(const Matrix& a, const Matrix& b);

/// Poset decomposition mismatch: the four summands reported for the order
/// 1<3, 2<3, 3<4 add to diag(1,1,1,0) instead of the identity.
FixtureReport fixture_poset_decomposition();

/// Non-inverse witness in the projected-product algebra: with
/// T = [[1,0,0],[1,1,0],[1,0,1]], X = T^{-1}.(T^{-1})^T fails to invert
/// theta = T^T.T.
FixtureReport fixture_triangle_product();

/// The 15-vs-13 second-derivative mismatch at lambda = 1, with the 15
/// cross-checked against variance_Q on the relabeled vinberg structure.
FixtureReport fixture_variance_counterexample();

std::vector<FixtureReport> run_all_fixtures();

}  // namespace homcone
