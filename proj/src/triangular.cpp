#include "homcone/triangular.hpp"

#include <cmath>

#include "homcone/wishart.hpp"

namespace homcone {

TriangularFactor TriangularFactor::from_matrix(const BlockStructure& s, const Matrix& t,
                                               double tol) {
    if (t.rows() != s.size() || t.cols() != s.size()) {
        throw DimensionMismatch("matrix size does not match the partition");
    }
    const int r = s.rank();
    const auto& sizes = s.sizes();
    Matrix snapped = Matrix::Zero(s.size(), s.size());
    double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    double residual = 0.0;
    for (int l = 0; l < r; ++l) {
        Matrix dblock = t.block(s.offset(l), s.offset(l), sizes[l], sizes[l]);
        double tll = dblock.trace() / sizes[l];
        residual = std::max(residual,
                            (dblock - tll * Matrix::Identity(sizes[l], sizes[l])).norm());
        if (tll <= 0.0) throw NotPositiveDefinite("triangular factor has nonpositive diagonal");
        snapped.block(s.offset(l), s.offset(l), sizes[l], sizes[l]) =
            tll * Matrix::Identity(sizes[l], sizes[l]);
        for (int k = 0; k < r; ++k) {
            if (k == l) continue;
            Matrix b = t.block(s.offset(l), s.offset(k), sizes[l], sizes[k]);
            if (k > l) {  // upper part must vanish
                residual = std::max(residual, b.norm());
                continue;
            }
            Matrix p = Matrix::Zero(sizes[l], sizes[k]);
            for (const Matrix& a : s.block_basis(l, k)) {
                p += ((b * a.transpose()).trace() / sizes[l]) * a;
            }
            residual = std::max(residual, (b - p).norm());
            snapped.block(s.offset(l), s.offset(k), sizes[l], sizes[k]) = p;
        }
    }
    if (residual > tol * scale) {
        throw NotInSpace("matrix is not in the triangular group of this structure");
    }
    return TriangularFactor(s, std::move(snapped));
}

TriangularFactor TriangularFactor::identity(const BlockStructure& s) {
    return TriangularFactor(s, Matrix::Identity(s.size(), s.size()));
}

double TriangularFactor::diagonal(int k) const {
    return t_(s_->offset(k), s_->offset(k));
}

TriangularFactor TriangularFactor::inverse() const {
    Matrix inv = t_.triangularView<Eigen::Lower>().solve(
        Matrix::Identity(s_->size(), s_->size()));
    return from_matrix(*s_, inv);
}

TriangularFactor TriangularFactor::operator*(const TriangularFactor& other) const {
    return from_matrix(*s_, t_ * other.t_);
}

double character(const Vector& shape, const TriangularFactor& t) {
    const auto& s = t.structure();
    if (shape.size() != s.rank()) {
        throw InvalidShape("shape vector length must equal the number of blocks");
    }
    double value = 1.0;
    for (int k = 0; k < s.rank(); ++k) {
        value *= std::pow(t.diagonal(k), 2.0 * shape[k]);
    }
    return value;
}

Matrix action(const TriangularFactor& t, const Matrix& x) {
    return t.matrix() * x * t.matrix().transpose();
}

Matrix dual_action(const TriangularFactor& t, const Matrix& xi) {
    return t.structure().project(t.matrix().transpose() * xi * t.matrix());
}

TriangularFactor cholesky(const BlockStructure& s, const Matrix& x) {
    if (!s.in_space(x)) throw NotInSpace();
    Eigen::LLT<Matrix> llt(0.5 * (x + x.transpose()));
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite();
    return TriangularFactor::from_matrix(s, llt.matrixL());
}

Matrix hat_completion(const BlockStructure& s, const Matrix& xi) {
    return lauritzen(s, xi).inverse();
}

TriangularFactor dual_decompose(const BlockStructure& s, const Matrix& xi) {
    // hat(xi)^{-1} = S S^T with S = T^{-1}
    return cholesky(s, lauritzen(s, xi)).inverse();
}

}  // namespace homcone
