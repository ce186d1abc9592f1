#pragma once

#include <random>

#include "homcone/power.hpp"
#include "homcone/structure.hpp"
#include "homcone/triangular.hpp"
#include "homcone/wishart.hpp"

namespace homcone::testing {

using Rng = std::mt19937_64;

inline Vector random_coords(const BlockStructure& s, Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vector c(s.dim_z());
    for (int a = 0; a < s.dim_z(); ++a) c[a] = u(rng);
    return c;
}

inline Matrix random_space_element(const BlockStructure& s, Rng& rng, double scale = 1.0) {
    return s.from_coords(random_coords(s, rng, scale));
}

inline Matrix random_symmetric(int n, Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) x(i, j) = x(j, i) = u(rng);
    return x;
}

inline TriangularFactor random_triangular(const BlockStructure& s, Rng& rng) {
    std::uniform_real_distribution<double> diag(0.6, 1.8);
    std::uniform_real_distribution<double> off(-0.8, 0.8);
    Matrix t = Matrix::Zero(s.size(), s.size());
    for (int k = 0; k < s.rank(); ++k) {
        t.block(s.offset(k), s.offset(k), s.sizes()[k], s.sizes()[k]) =
            diag(rng) * Matrix::Identity(s.sizes()[k], s.sizes()[k]);
        for (int l = k + 1; l < s.rank(); ++l) {
            for (const Matrix& a : s.block_basis(l, k)) {
                t.block(s.offset(l), s.offset(k), s.sizes()[l], s.sizes()[k]) += off(rng) * a;
            }
        }
    }
    return TriangularFactor::from_matrix(s, t);
}

inline Matrix random_cone_point(const BlockStructure& s, Rng& rng) {
    TriangularFactor t = random_triangular(s, rng);
    return t.matrix() * t.matrix().transpose();
}

inline Matrix random_dual_point(const BlockStructure& s, Rng& rng) {
    TriangularFactor t = random_triangular(s, rng);
    return dual_action(t, Matrix::Identity(s.size(), s.size()));
}

// Shape in the open stratum of the given side's Gindikin set, all entries > 0.
inline Vector random_shape(const BlockStructure& s, Side side, Rng& rng) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    Vector shape(s.rank());
    for (int k = 0; k < s.rank(); ++k) {
        double bound = 0.0;
        if (side == Side::P) {
            for (int i = 0; i < k; ++i) bound += s.block_dim(k, i);
        } else {
            for (int l = k + 1; l < s.rank(); ++l) bound += s.block_dim(l, k);
        }
        shape[k] = 0.5 * bound + u(rng);
    }
    return shape;
}

inline Vector shape_of(std::initializer_list<double> vals) {
    Vector s(static_cast<Eigen::Index>(vals.size()));
    int i = 0;
    for (double v : vals) s[i++] = v;
    return s;
}

inline Vector sizes_shape(const BlockStructure& s) {
    Vector n(s.rank());
    for (int k = 0; k < s.rank(); ++k) n[k] = s.sizes()[k];
    return n;
}

}  // namespace homcone::testing
