#include "homcone/power.hpp"

#include <cmath>

namespace homcone {

namespace {
constexpr double kPdTol = 1e-12;

void check_shape(const BlockStructure& s, const Vector& shape) {
    if (shape.size() != s.rank()) {
        throw InvalidShape("shape vector length must equal the number of blocks");
    }
}
}  // namespace

Matrix quadratic_map(const BlockStructure& s, int i, const Vector& w) {
    const auto& basis = s.domain_basis(i);
    if (w.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DimensionMismatch("coordinate vector does not match dim W_i");
    }
    Matrix x = Matrix::Zero(s.size(), s.sizes()[i]);
    for (size_t a = 0; a < basis.size(); ++a) {
        x += w[a] * basis[a];
    }
    return x * x.transpose();
}

Matrix phi(const BlockStructure& s, int i, const Matrix& xi) {
    if (xi.rows() != s.size() || xi.cols() != s.size()) {
        throw DimensionMismatch("matrix size does not match the partition");
    }
    const auto& basis = s.domain_basis(i);
    const int m = static_cast<int>(basis.size());
    Matrix p(m, m);
    for (int a = 0; a < m; ++a) {
        Matrix xa = xi * basis[a];
        for (int b = a; b < m; ++b) {
            p(a, b) = p(b, a) = (basis[b].transpose() * xa).trace();
        }
    }
    return p;
}

Matrix phi_reduced(const BlockStructure& s, int i, const Matrix& xi) {
    Matrix p = phi(s, i, xi);
    return p.bottomRightCorner(p.rows() - 1, p.cols() - 1);
}

namespace {

// Shared assembly for the adjoints.  Slot 0 of X corresponds to the (i,i)
// coordinate when with_head is true; the remaining slots run over the bases
// of V_li, l = i+1..r, in order.
Matrix phi_adjoint_impl(const BlockStructure& s, int i, const Matrix& X, bool with_head) {
    const int r = s.rank();
    const int N = s.size();
    const auto& sizes = s.sizes();

    std::vector<int> slot_block;  // block index l per off-head slot
    std::vector<const Matrix*> slot_basis;
    for (int l = i + 1; l < r; ++l) {
        for (const Matrix& a : s.block_basis(l, i)) {
            slot_block.push_back(l);
            slot_basis.push_back(&a);
        }
    }
    const int head = with_head ? 1 : 0;
    const int expect = head + static_cast<int>(slot_block.size());
    if (X.rows() != expect || X.cols() != expect) {
        throw DimensionMismatch("adjoint argument has wrong size");
    }

    Matrix z = Matrix::Zero(N, N);
    if (with_head) {
        z.block(s.offset(i), s.offset(i), sizes[i], sizes[i]) =
            X(0, 0) * Matrix::Identity(sizes[i], sizes[i]);
    }
    for (size_t a = 0; a < slot_block.size(); ++a) {
        const int l = slot_block[a];
        if (with_head) {
            Matrix b = X(0, head + a) * (*slot_basis[a]);
            z.block(s.offset(l), s.offset(i), sizes[l], sizes[i]) += b;
            z.block(s.offset(i), s.offset(l), sizes[i], sizes[l]) += b.transpose();
        }
        // diagonal blocks: trace of the within-group diagonal of X
        z.block(s.offset(l), s.offset(l), sizes[l], sizes[l]) +=
            X(head + a, head + a) * Matrix::Identity(sizes[l], sizes[l]);
        for (size_t b = 0; b < a; ++b) {
            const int lp = slot_block[b];
            if (lp == l) continue;  // same-group off-diagonal entries cancel into scalars below
            Matrix prod = X(head + a, head + b) * (*slot_basis[a]) * slot_basis[b]->transpose();
            z.block(s.offset(l), s.offset(lp), sizes[l], sizes[lp]) += prod;
            z.block(s.offset(lp), s.offset(l), sizes[lp], sizes[l]) += prod.transpose();
        }
        // within-group off-diagonal entries of X contribute through the
        // polarized products A_a A_b^T + A_b A_a^T = 2 (A_a|A_b) I = 0.
    }
    return z;
}

}  // namespace

Matrix phi_adjoint(const BlockStructure& s, int i, const Matrix& X) {
    return phi_adjoint_impl(s, i, X, true);
}

Matrix phi_reduced_adjoint(const BlockStructure& s, int i, const Matrix& X) {
    return phi_adjoint_impl(s, i, X, false);
}

namespace {

// Leading block minors det x_{1:N_k}, k = 0..r-1.
std::vector<double> block_minors(const BlockStructure& s, const Matrix& x) {
    std::vector<double> minors(s.rank());
    for (int k = 0; k < s.rank(); ++k) {
        const int nk = s.boundary(k);
        minors[k] = x.topLeftCorner(nk, nk).determinant();
    }
    return minors;
}

bool minors_positive(const BlockStructure& s, const Matrix& x, std::vector<double>* out) {
    auto minors = block_minors(s, x);
    double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    for (int k = 0; k < s.rank(); ++k) {
        if (minors[k] < kPdTol * std::pow(scale, s.boundary(k))) return false;
    }
    if (out) *out = std::move(minors);
    return true;
}

bool phi_dets_positive(const BlockStructure& s, const Matrix& xi, std::vector<double>* full,
                       std::vector<double>* reduced) {
    const int r = s.rank();
    std::vector<double> df(r), dr(r);
    for (int i = 0; i < r; ++i) {
        Matrix p = phi(s, i, xi);
        df[i] = p.determinant();
        dr[i] = p.rows() > 1
                    ? p.bottomRightCorner(p.rows() - 1, p.cols() - 1).determinant()
                    : 1.0;
        double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
        if (df[i] < kPdTol * std::pow(scale, p.rows())) return false;
        if (p.rows() > 1 && dr[i] < kPdTol * std::pow(scale, p.rows() - 1)) return false;
    }
    if (full) *full = std::move(df);
    if (reduced) *reduced = std::move(dr);
    return true;
}

}  // namespace

bool in_cone(const BlockStructure& s, const Matrix& x) {
    return s.in_space(x) && minors_positive(s, x, nullptr);
}

bool in_dual_cone(const BlockStructure& s, const Matrix& xi) {
    return s.in_space(xi) && phi_dets_positive(s, xi, nullptr, nullptr);
}

double power_cone(const BlockStructure& s, const Vector& shape, const Matrix& x) {
    check_shape(s, shape);
    std::vector<double> minors;
    if (!s.in_space(x) || !minors_positive(s, x, &minors)) {
        throw NotInCone();
    }
    const auto& n = s.sizes();
    const int r = s.rank();
    double log_value = shape[r - 1] / n[r - 1] * std::log(minors[r - 1]);
    for (int k = 0; k + 1 < r; ++k) {
        log_value += (shape[k] / n[k] - shape[k + 1] / n[k + 1]) * std::log(minors[k]);
    }
    return std::exp(log_value);
}

double power_dual(const BlockStructure& s, const Vector& shape, const Matrix& xi) {
    check_shape(s, shape);
    std::vector<double> full, reduced;
    if (!s.in_space(xi) || !phi_dets_positive(s, xi, &full, &reduced)) {
        throw NotInDualCone();
    }
    double log_value = 0.0;
    for (int i = 0; i < s.rank(); ++i) {
        log_value += shape[i] * (std::log(full[i]) - std::log(reduced[i]) -
                                 std::log(static_cast<double>(s.sizes()[i])));
    }
    return std::exp(log_value);
}

Matrix grad_log_power_cone(const BlockStructure& s, const Vector& shape, const Matrix& x) {
    check_shape(s, shape);
    if (!s.in_space(x) || !minors_positive(s, x, nullptr)) {
        throw NotInCone();
    }
    const auto& n = s.sizes();
    const int r = s.rank();
    const int N = s.size();
    Matrix grad = Matrix::Zero(N, N);
    for (int k = 0; k < r; ++k) {
        double weight = (k + 1 < r) ? shape[k] / n[k] - shape[k + 1] / n[k + 1]
                                    : shape[k] / n[k];
        if (weight == 0.0) continue;
        const int nk = s.boundary(k);
        Matrix padded = Matrix::Zero(N, N);
        padded.topLeftCorner(nk, nk) = x.topLeftCorner(nk, nk).inverse();
        grad += weight * padded;
    }
    return s.project(grad);
}

Matrix grad_log_power_dual(const BlockStructure& s, const Vector& shape, const Matrix& xi) {
    check_shape(s, shape);
    if (!s.in_space(xi) || !phi_dets_positive(s, xi, nullptr, nullptr)) {
        throw NotInDualCone();
    }
    const int r = s.rank();
    const int d = s.dim_z();
    std::vector<Matrix> phi_inv(r), phi_red_inv(r);
    for (int i = 0; i < r; ++i) {
        Matrix p = phi(s, i, xi);
        phi_inv[i] = p.inverse();
        if (p.rows() > 1) {
            phi_red_inv[i] = p.bottomRightCorner(p.rows() - 1, p.cols() - 1).inverse();
        } else {
            phi_red_inv[i] = Matrix::Zero(0, 0);
        }
    }
    // D_a log det phi_i(xi) = tr(phi_i(xi)^{-1} phi_i(e_a)) by linearity of phi_i
    Vector c = Vector::Zero(d);
    for (int a = 0; a < d; ++a) {
        const Matrix& e = s.z_basis()[a];
        for (int i = 0; i < r; ++i) {
            if (shape[i] == 0.0) continue;
            Matrix pe = phi(s, i, e);
            double term = (phi_inv[i] * pe).trace();
            if (pe.rows() > 1) {
                term -= (phi_red_inv[i] *
                         pe.bottomRightCorner(pe.rows() - 1, pe.cols() - 1))
                            .trace();
            }
            c[a] += shape[i] * term;
        }
    }
    return s.from_coords(c);
}

}  // namespace homcone
