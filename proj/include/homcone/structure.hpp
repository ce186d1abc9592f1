#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homcone/types.hpp"

namespace homcone {

/// A block structure V = {V_lk} on a partition N = n_1 + ... + n_r.
///
/// Each V_lk (1 <= k < l <= r, stored 0-based) is a subspace of the n_l x n_k
/// real matrices, held as an orthonormal basis with respect to the inner
/// product (A|B) defined by (A B^T + B A^T)/2 = (A|B) I_{n_l}.  The structure
/// determines the block space Z_V of symmetric N x N matrices with scalar
/// diagonal blocks x_ll I_{n_l} and off-diagonal blocks in V_lk, the cone
/// P_V = Z_V n Sym_+(N) and its dual Q_V under the trace inner product
/// <x,y> = tr(xy).
///
/// Constructors orthonormalize user-supplied spanning sets (modified
/// Gram-Schmidt) and reject rank-deficient inputs.  All instances are
/// immutable after construction and safe to share across threads.
class BlockStructure {
public:
    /// blocks key: (l, k) with 0 <= k < l < r; value: spanning set of V_lk.
    BlockStructure(std::vector<int> sizes,
                   std::map<std::pair<int, int>, std::vector<Matrix>> blocks);

    int rank() const { return r_; }                       // r
    const std::vector<int>& sizes() const { return sizes_; }
    int size() const { return N_; }                       // N
    int offset(int k) const { return offsets_[k]; }       // first row of block k
    int boundary(int k) const { return offsets_[k] + sizes_[k]; }  // N_{k+1}

    /// Orthonormal basis of V_lk (empty when V_lk = {0}).
    const std::vector<Matrix>& block_basis(int l, int k) const;
    int block_dim(int l, int k) const { return static_cast<int>(block_basis(l, k).size()); }

    /// dim Z_V = r + sum dim V_lk.
    int dim_z() const { return static_cast<int>(z_basis_.size()); }

    /// Orthonormal basis of Z_V w.r.t. the trace inner product, grouped by
    /// column: for i = 1..r the slots [diag_i, V_{i+1,i}, ..., V_{r,i}].
    const std::vector<Matrix>& z_basis() const { return z_basis_; }

    /// Orthogonal projection pi: Sym(N) -> Z_V, computed blockwise.
    Matrix project(const Matrix& x) const;

    /// Coordinates <x, e_a> of pi(x) in z_basis.
    Vector coords(const Matrix& x) const;
    Matrix from_coords(const Vector& c) const;

    /// Trace inner product of two symmetric matrices.
    static double inner(const Matrix& x, const Matrix& y) { return (x * y).trace(); }

    /// Distance from x to Z_V, relative to max(1, |x|_inf).
    double space_residual(const Matrix& x) const;
    bool in_space(const Matrix& x, double tol = 1e-9) const;

    /// Dimension m_i = 1 + sum_{l>i} dim V_li of the column space W_i.
    int domain_dim(int i) const { return domain_dims_[i]; }

    /// Basis of W_i as N x n_i matrices: first the unit slot at block (i,i),
    /// then the V_li bases for l = i+1..r.
    const std::vector<Matrix>& domain_basis(int i) const { return domain_basis_[i]; }

    /// Scalar diagonal coefficient x_kk of a Z_V element.
    double diag_coefficient(const Matrix& x, int k) const;

    bool operator==(const BlockStructure& other) const;

private:
    int r_ = 0;
    int N_ = 0;
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    std::vector<std::vector<std::vector<Matrix>>> blocks_;  // blocks_[l][k]
    std::vector<Matrix> z_basis_;
    std::vector<int> domain_dims_;
    std::vector<std::vector<Matrix>> domain_basis_;

    void build_derived();
};

/// Validation report for the axioms V1, V2, V3 and z-basis orthonormality.
struct StructureReport {
    double v1_residual = 0.0;
    double v2_residual = 0.0;
    double v3_residual = 0.0;
    double orthonormality_residual = 0.0;
    double tolerance = 0.0;
    bool v1_pass = true;
    bool v2_pass = true;
    bool v3_pass = true;

    bool pass() const { return v1_pass && v2_pass && v3_pass; }
};

/// Checks V1 (V_lk V_ki c V_li), V2 (V_li V_ki^T c V_lk) and the polarized
/// V3 (A B^T + B A^T in R I_{n_l}) on all basis pairs, reporting worst-case
/// residuals.  tol_struct is relative to the largest basis-entry magnitude.
StructureReport validate_structure(const BlockStructure& s, double tol_struct = 1e-9);

/// Named structures: "sym(n)", "vinberg", "dual_vinberg".
BlockStructure preset(const std::string& name);

/// Simple undirected graph on vertices 0..r-1.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    bool adjacent(int a, int b) const;
};

struct GraphStructureResult {
    BlockStructure structure;
    std::vector<int> ordering;  // ordering[new position] = original vertex
};

/// Builds the homogeneous-cone structure of a decomposable A4-free graph
/// (n_1 = ... = n_r = 1, V_lk = R iff edge), reordering vertices so that
/// V1-V3 hold.  Throws NotHomogeneous with a witness (chordless cycle or
/// induced 4-path) otherwise.  Vertex counts above 12 are unsupported.
GraphStructureResult structure_from_graph(const Graph& g);

// ---- file formats -------------------------------------------------------

/// Cone-spec JSON: { "sizes": [n1,...,nr], "blocks": { "l,k": [[...], ...] } }
/// with 1-based keys l > k and each basis matrix flattened row-major.
std::string structure_to_json(const BlockStructure& s);
BlockStructure structure_from_json(const std::string& text);
BlockStructure load_structure(const std::string& path);
void save_structure(const std::string& path, const BlockStructure& s);

/// Graph file: whitespace-separated "i j" pairs, one per line, 1-based.
Graph load_graph(const std::string& path);

/// Point files are JSON N x N matrices (array of rows).
Matrix matrix_from_json(const std::string& text);
Matrix load_matrix(const std::string& path);
std::string matrix_to_json(const Matrix& m);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string structure_hash(const BlockStructure& s);
std::string matrix_hash(const Matrix& m);

/// Materializes a linear map on Z_V as a dim_z x dim_z matrix in z_basis
/// coordinates (column a = coords of f(e_a)).
Matrix materialize_operator(const BlockStructure& s,
                            const std::function<Matrix(const Matrix&)>& f);

}  // namespace homcone
