#include "homcone/wishart.hpp"

#include <cmath>

#include "homcone/power.hpp"
#include "homcone/triangular.hpp"

namespace homcone {

namespace {
constexpr double kGindikinEqTol = 1e-12;

void check_positive_shape(const BlockStructure& s, const Vector& shape) {
    if (shape.size() != s.rank()) {
        throw InvalidShape("shape vector length must equal the number of blocks");
    }
    for (int k = 0; k < s.rank(); ++k) {
        if (shape[k] <= 0.0) throw InvalidShape("shape entries must be positive");
    }
}
}  // namespace

std::vector<std::vector<int>> gindikin_matches(const BlockStructure& s, Side side,
                                               const Vector& shape) {
    if (shape.size() != s.rank()) {
        throw InvalidShape("shape vector length must equal the number of blocks");
    }
    const int r = s.rank();
    std::vector<std::vector<int>> matches;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<int> eps(r);
        for (int k = 0; k < r; ++k) eps[k] = (mask >> k) & 1;
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) {
            double bound = 0.0;
            if (side == Side::P) {
                for (int i = 0; i < k; ++i) bound += eps[i] * s.block_dim(k, i);
            } else {
                for (int l = k + 1; l < r; ++l) bound += eps[l] * s.block_dim(l, k);
            }
            bound *= 0.5;
            const bool equal = std::abs(shape[k] - bound) <= kGindikinEqTol;
            if (eps[k] == 1) {
                ok = shape[k] > bound && !equal;
            } else {
                ok = equal;
            }
        }
        if (ok) matches.push_back(std::move(eps));
    }
    return matches;
}

GindikinClass gindikin(const BlockStructure& s, Side side, const Vector& shape) {
    auto matches = gindikin_matches(s, side, shape);
    if (matches.size() > 1) {
        throw ConeError("internal error: Gindikin strata overlap");
    }
    GindikinClass g;
    g.side = side;
    if (!matches.empty()) g.epsilon = matches.front();
    g.nondegenerate = g.in_set() && (shape.array() > 0.0).all();
    return g;
}

double laplace_Q(const BlockStructure& s, const Vector& shape, const Matrix& theta) {
    if (!gindikin(s, Side::Q, shape).in_set()) {
        throw InvalidShape("shape is outside the Gindikin set of the Q side");
    }
    return power_cone(s, -shape, theta);
}

double laplace_P(const BlockStructure& s, const Vector& shape, const Matrix& xi) {
    if (!gindikin(s, Side::P, shape).in_set()) {
        throw InvalidShape("shape is outside the Gindikin set of the P side");
    }
    return power_dual(s, -shape, xi);
}

Matrix mean_Q(const BlockStructure& s, const Vector& shape, const Matrix& theta) {
    check_positive_shape(s, shape);
    return -grad_log_power_cone(s, -shape, theta);
}

Matrix inverse_mean_Q(const BlockStructure& s, const Vector& shape, const Matrix& m) {
    check_positive_shape(s, shape);
    if (!in_dual_cone(s, m)) throw NotInDualCone();
    const int r = s.rank();
    Matrix psi = Matrix::Zero(s.size(), s.size());
    for (int i = 0; i < r; ++i) {
        Matrix p = phi(s, i, m);
        psi += shape[i] * phi_adjoint(s, i, p.inverse());
        if (p.rows() > 1) {
            Matrix q = p.bottomRightCorner(p.rows() - 1, p.cols() - 1);
            psi -= shape[i] * phi_reduced_adjoint(s, i, q.inverse());
        }
    }
    return psi;
}

Matrix lauritzen(const BlockStructure& s, const Matrix& m) {
    Vector n(s.rank());
    for (int k = 0; k < s.rank(); ++k) n[k] = s.sizes()[k];
    return inverse_mean_Q(s, n, m);
}

double ZOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (coords_ + coords_.transpose()));
    return es.eigenvalues().minCoeff();
}

namespace {

// Zero-padded inverse of a leading principal submatrix: [ (y)_{1:k} ]^{-1}_0.
Matrix padded_leading_inverse(const Matrix& y, int head, int n) {
    Matrix out = Matrix::Zero(n, n);
    out.topLeftCorner(head, head) = y.topLeftCorner(head, head).inverse();
    return out;
}

ZOperator congruence_sum_operator(const BlockStructure& s,
                                  const std::vector<double>& weights,
                                  const std::vector<Matrix>& kernels) {
    Matrix op = materialize_operator(s, [&](const Matrix& e) -> Matrix {
        Matrix acc = Matrix::Zero(s.size(), s.size());
        for (size_t j = 0; j < weights.size(); ++j) {
            if (weights[j] == 0.0) continue;
            acc += weights[j] * (kernels[j] * e * kernels[j]);
        }
        return acc;
    });
    return ZOperator(s, std::move(op));
}

}  // namespace

ZOperator variance_Q(const BlockStructure& s, const Vector& shape, const Matrix& m) {
    check_positive_shape(s, shape);
    if (!in_dual_cone(s, m)) throw NotInDualCone();
    const int r = s.rank();
    const auto& n = s.sizes();
    Matrix hat_inv = lauritzen(s, m);
    Matrix hat = hat_inv.inverse();

    std::vector<double> weights{n[0] / shape[0]};
    std::vector<Matrix> kernels{hat};
    for (int i = 1; i < r; ++i) {
        weights.push_back(n[i] / shape[i] - n[i - 1] / shape[i - 1]);
        kernels.push_back(hat - padded_leading_inverse(hat_inv, s.boundary(i - 1), s.size()));
    }
    return congruence_sum_operator(s, weights, kernels);
}

ZOperator variance_Q_alt_vinberg(const BlockStructure& s, const Vector& shape, const Matrix& m) {
    if (!(s == preset("vinberg"))) {
        throw ConeError("the rearranged variance form is specific to the vinberg structure");
    }
    check_positive_shape(s, shape);
    if (!in_dual_cone(s, m)) throw NotInDualCone();
    Matrix hat = hat_completion(s, m);
    const double det13 = m(0, 0) * m(2, 2) - m(2, 0) * m(2, 0);
    const double det23 = m(1, 1) * m(2, 2) - m(2, 1) * m(2, 1);
    Matrix m1 = Matrix::Zero(3, 3);
    m1(0, 0) = det13 / m(2, 2);
    Matrix m2 = Matrix::Zero(3, 3);
    m2(1, 1) = det23 / m(2, 2);

    std::vector<double> weights{1.0 / shape[0] + 1.0 / shape[1] - 1.0 / shape[2],
                                1.0 / shape[2] - 1.0 / shape[0],
                                1.0 / shape[2] - 1.0 / shape[1]};
    std::vector<Matrix> kernels{hat, hat - m1, hat - m2};
    return congruence_sum_operator(s, weights, kernels);
}

ZOperator variance_P(const BlockStructure& s, const Vector& shape, const Matrix& x) {
    check_positive_shape(s, shape);
    if (!in_cone(s, x)) throw NotInCone();
    const int r = s.rank();
    const auto& n = s.sizes();
    TriangularFactor t = cholesky(s, x);
    const Matrix& tm = t.matrix();

    Matrix op = materialize_operator(s, [&](const Matrix& e) -> Matrix {
        Matrix y = s.project(tm.transpose() * e * tm);  // rho*(T) e
        Matrix acc = (n[r - 1] / shape[r - 1]) * y;
        for (int k = 0; k + 1 < r; ++k) {
            double w = n[k] / shape[k] - n[k + 1] / shape[k + 1];
            if (w == 0.0) continue;
            const int nk = s.boundary(k);
            Matrix cut = Matrix::Zero(s.size(), s.size());
            cut.topLeftCorner(nk, nk) = y.topLeftCorner(nk, nk);  // rho(J_k) y
            acc += w * cut;
        }
        return tm * acc * tm.transpose();  // rho(T)
    });
    return ZOperator(s, std::move(op));
}

}  // namespace homcone
