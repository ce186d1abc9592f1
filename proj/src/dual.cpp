#include "homcone/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "homcone/power.hpp"

namespace homcone {

Matrix phi_big(const BlockStructure& s, const Matrix& xi) {
    int d = 0;
    for (int i = 0; i < s.rank(); ++i) d += s.domain_dim(i);
    Matrix out = Matrix::Zero(d, d);
    int at = 0;
    for (int i = 0; i < s.rank(); ++i) {
        const int m = s.domain_dim(i);
        out.block(at, at, m, m) = phi(s, i, xi);
        at += m;
    }
    return out;
}

DualRealization dualize(const BlockStructure& s) {
    const int r = s.rank();
    int d = 0;
    for (int i = 0; i < r; ++i) d += s.domain_dim(i);

    // Each ambient coordinate of Phi carries exactly one diagonal weight
    // xi_kk: the head slot of block i carries i, a V_li slot carries l.
    std::vector<int> weight;
    weight.reserve(d);
    for (int i = 0; i < r; ++i) {
        weight.push_back(i);
        for (int l = i + 1; l < r; ++l) {
            for (int c = 0; c < s.block_dim(l, i); ++c) weight.push_back(l);
        }
    }

    // Sort coordinates by weight descending (block r first), stable.
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return weight[a] > weight[b]; });

    std::vector<int> nu(r, 0);  // nu[k] = multiplicity of weight k
    for (int w : weight) ++nu[w];

    Vector dinv_sqrt(d);
    {
        Matrix phi_id = phi_big(s, Matrix::Identity(s.size(), s.size()));
        for (int a = 0; a < d; ++a) dinv_sqrt[a] = 1.0 / std::sqrt(phi_id(a, a));
    }
    auto realize = [&](const Matrix& xi) {
        Matrix p = phi_big(s, xi);
        Matrix out(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                out(a, b) = dinv_sqrt[perm[a]] * dinv_sqrt[perm[b]] * p(perm[a], perm[b]);
        return out;
    };

    // Verify the diagonal condition the permutation was built for.
    {
        int at = 0;
        for (int k = r - 1; k >= 0; --k) {
            Matrix diag_basis = Matrix::Zero(s.size(), s.size());
            diag_basis.block(s.offset(k), s.offset(k), s.sizes()[k], s.sizes()[k]) =
                Matrix::Identity(s.sizes()[k], s.sizes()[k]);
            Matrix img = realize(diag_basis);
            Matrix expect = Matrix::Zero(d, d);
            expect.block(at, at, nu[k], nu[k]) = Matrix::Identity(nu[k], nu[k]);
            if ((img - expect).norm() > 1e-9) {
                throw PermutationNotFound("permutation does not satisfy the diagonal condition");
            }
            at += nu[k];
        }
    }

    // Target partition: (nu_r, ..., nu_1).
    std::vector<int> target_sizes(nu.rbegin(), nu.rend());
    std::vector<int> target_offsets(r);
    for (int k = 0, acc = 0; k < r; ++k) {
        target_offsets[k] = acc;
        acc += target_sizes[k];
    }

    // Extract target block bases from images of the z-basis.
    std::map<std::pair<int, int>, std::vector<Matrix>> target_blocks;
    std::vector<Matrix> images;
    for (const Matrix& e : s.z_basis()) images.push_back(realize(e));
    for (int l = 1; l < r; ++l) {
        for (int k = 0; k < l; ++k) {
            std::vector<Matrix> span;
            for (const Matrix& img : images) {
                Matrix b = img.block(target_offsets[l], target_offsets[k], target_sizes[l],
                                     target_sizes[k]);
                if (b.norm() > 1e-9) span.push_back(b);
            }
            // orthonormalize here so rank-deficient collections are thinned
            std::vector<Matrix> basis;
            for (Matrix v : span) {
                for (const Matrix& u : basis) {
                    v -= ((v * u.transpose()).trace() / target_sizes[l]) * u;
                }
                double norm = std::sqrt((v * v.transpose()).trace() / target_sizes[l]);
                if (norm > 1e-9) basis.push_back(v / norm);
            }
            if (!basis.empty()) target_blocks[{l, k}] = basis;
        }
    }

    BlockStructure target(target_sizes, std::move(target_blocks));
    if (!validate_structure(target).pass()) {
        throw PermutationNotFound("extracted dual structure fails V1-V3");
    }

    // Coordinate matrix of l^{-1}: column a = target coords of realize(e_a).
    const int dz = s.dim_z();
    if (target.dim_z() != dz) {
        throw PermutationNotFound("dual structure dimension mismatch");
    }
    Matrix l_inv(dz, dz);
    for (int a = 0; a < dz; ++a) {
        if (!target.in_space(images[a])) {
            throw PermutationNotFound("image of the z-basis is not in the dual block space");
        }
        l_inv.col(a) = target.coords(images[a]);
    }

    DualRealization real{s, std::move(target), std::move(perm), l_inv.inverse(),
                         std::move(l_inv)};
    return real;
}

double check_strange(const DualRealization& real, const Vector& shape, const Matrix& x) {
    Vector reversed = shape.reverse();
    double lhs = power_cone(real.target, reversed, x);
    double rhs = power_dual(real.source, shape, real.to_source(x));
    return std::abs(lhs - rhs) / std::abs(rhs);
}

ZOperator variance_P_via_dual(const DualRealization& real, const Vector& shape,
                              const Matrix& x) {
    Vector reversed = shape.reverse();
    ZOperator vq = variance_Q(real.target, reversed, real.adjoint_to_target(x));
    Matrix lt_inv = real.l_matrix.transpose().inverse();
    Matrix coords = lt_inv * vq.coords() * real.l_inv_matrix;
    return ZOperator(real.source, std::move(coords));
}

namespace {
nlohmann::json matrix_rows(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Matrix rows_matrix(const nlohmann::json& j) {
    const int rows = static_cast<int>(j.size());
    const int cols = rows ? static_cast<int>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    return m;
}
}  // namespace

std::string dual_to_json(const DualRealization& real) {
    nlohmann::json j;
    j["source"] = nlohmann::json::parse(structure_to_json(real.source));
    j["target"] = nlohmann::json::parse(structure_to_json(real.target));
    j["permutation"] = real.permutation;
    j["l"] = matrix_rows(real.l_matrix);
    j["l_inv"] = matrix_rows(real.l_inv_matrix);
    return j.dump(2);
}

DualRealization dual_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        DualRealization real{structure_from_json(j.at("source").dump()),
                             structure_from_json(j.at("target").dump()),
                             j.at("permutation").get<std::vector<int>>(),
                             rows_matrix(j.at("l")), rows_matrix(j.at("l_inv"))};
        return real;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid dual-realization JSON: ") + e.what());
    }
}

}  // namespace homcone
