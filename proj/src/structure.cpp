#include "homcone/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace homcone {

namespace {

// Inner product on Mat(n_l, n_k) extending (A|B) I_{n_l} = (AB^T + BA^T)/2.
double block_inner(const Matrix& a, const Matrix& b) {
    return (a * b.transpose()).trace() / static_cast<double>(a.rows());
}

std::vector<Matrix> orthonormalize(const std::vector<Matrix>& span, int rows, int cols) {
    std::vector<Matrix> basis;
    for (const Matrix& raw : span) {
        if (raw.rows() != rows || raw.cols() != cols) {
            throw DimensionMismatch("block basis matrix has wrong dimensions");
        }
        Matrix v = raw;
        for (const Matrix& u : basis) {
            v -= block_inner(v, u) * u;
        }
        double norm = std::sqrt(block_inner(v, v));
        double scale = std::sqrt(std::max(block_inner(raw, raw), 1.0));
        if (norm <= 1e-12 * scale) {
            throw ConeError("rank-deficient spanning set for a block subspace");
        }
        basis.push_back(v / norm);
    }
    return basis;
}

}  // namespace

BlockStructure::BlockStructure(std::vector<int> sizes,
                               std::map<std::pair<int, int>, std::vector<Matrix>> blocks)
    : sizes_(std::move(sizes)) {
    r_ = static_cast<int>(sizes_.size());
    if (r_ == 0) throw DimensionMismatch("partition must have at least one block");
    for (int n : sizes_) {
        if (n <= 0) throw DimensionMismatch("block sizes must be positive");
    }
    offsets_.resize(r_);
    N_ = 0;
    for (int k = 0; k < r_; ++k) {
        offsets_[k] = N_;
        N_ += sizes_[k];
    }
    blocks_.assign(r_, std::vector<std::vector<Matrix>>(r_));
    for (auto& [key, span] : blocks) {
        auto [l, k] = key;
        if (k < 0 || l >= r_ || k >= l) {
            throw DimensionMismatch("block key must satisfy 0 <= k < l < r");
        }
        blocks_[l][k] = orthonormalize(span, sizes_[l], sizes_[k]);
    }
    build_derived();
}

void BlockStructure::build_derived() {
    z_basis_.clear();
    domain_dims_.assign(r_, 0);
    domain_basis_.assign(r_, {});
    for (int i = 0; i < r_; ++i) {
        // diagonal slot
        Matrix e = Matrix::Zero(N_, N_);
        double c = 1.0 / std::sqrt(static_cast<double>(sizes_[i]));
        e.block(offsets_[i], offsets_[i], sizes_[i], sizes_[i]) =
            c * Matrix::Identity(sizes_[i], sizes_[i]);
        z_basis_.push_back(e);

        Matrix w = Matrix::Zero(N_, sizes_[i]);
        w.block(offsets_[i], 0, sizes_[i], sizes_[i]) = Matrix::Identity(sizes_[i], sizes_[i]);
        domain_basis_[i].push_back(w);

        for (int l = i + 1; l < r_; ++l) {
            for (const Matrix& a : blocks_[l][i]) {
                Matrix f = Matrix::Zero(N_, N_);
                double cf = 1.0 / std::sqrt(2.0 * sizes_[l]);
                f.block(offsets_[l], offsets_[i], sizes_[l], sizes_[i]) = cf * a;
                f.block(offsets_[i], offsets_[l], sizes_[i], sizes_[l]) = cf * a.transpose();
                z_basis_.push_back(f);

                Matrix wa = Matrix::Zero(N_, sizes_[i]);
                wa.block(offsets_[l], 0, sizes_[l], sizes_[i]) = a;
                domain_basis_[i].push_back(wa);
            }
        }
        domain_dims_[i] = static_cast<int>(domain_basis_[i].size());
    }
}

const std::vector<Matrix>& BlockStructure::block_basis(int l, int k) const {
    return blocks_[l][k];
}

Matrix BlockStructure::project(const Matrix& x) const {
    if (x.rows() != N_ || x.cols() != N_) {
        throw DimensionMismatch("matrix size does not match the partition");
    }
    Matrix y = Matrix::Zero(N_, N_);
    for (int k = 0; k < r_; ++k) {
        double mean = x.block(offsets_[k], offsets_[k], sizes_[k], sizes_[k]).trace() / sizes_[k];
        y.block(offsets_[k], offsets_[k], sizes_[k], sizes_[k]) =
            mean * Matrix::Identity(sizes_[k], sizes_[k]);
        for (int l = k + 1; l < r_; ++l) {
            if (blocks_[l][k].empty()) continue;
            Matrix b = 0.5 * (x.block(offsets_[l], offsets_[k], sizes_[l], sizes_[k]) +
                              x.block(offsets_[k], offsets_[l], sizes_[k], sizes_[l]).transpose());
            Matrix p = Matrix::Zero(sizes_[l], sizes_[k]);
            for (const Matrix& a : blocks_[l][k]) {
                p += block_inner(b, a) * a;
            }
            y.block(offsets_[l], offsets_[k], sizes_[l], sizes_[k]) = p;
            y.block(offsets_[k], offsets_[l], sizes_[k], sizes_[l]) = p.transpose();
        }
    }
    return y;
}

Vector BlockStructure::coords(const Matrix& x) const {
    if (x.rows() != N_ || x.cols() != N_) {
        throw DimensionMismatch("matrix size does not match the partition");
    }
    Vector c(dim_z());
    for (int a = 0; a < dim_z(); ++a) {
        c[a] = inner(x, z_basis_[a]);
    }
    return c;
}

Matrix BlockStructure::from_coords(const Vector& c) const {
    if (c.size() != dim_z()) throw DimensionMismatch("coordinate vector has wrong length");
    Matrix x = Matrix::Zero(N_, N_);
    for (int a = 0; a < dim_z(); ++a) {
        x += c[a] * z_basis_[a];
    }
    return x;
}

double BlockStructure::space_residual(const Matrix& x) const {
    Matrix sym = 0.5 * (x + x.transpose());
    double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    return ((x - x.transpose()).norm() + (sym - project(sym)).norm()) / scale;
}

bool BlockStructure::in_space(const Matrix& x, double tol) const {
    return space_residual(x) <= tol;
}

double BlockStructure::diag_coefficient(const Matrix& x, int k) const {
    return x.block(offsets_[k], offsets_[k], sizes_[k], sizes_[k]).trace() / sizes_[k];
}

bool BlockStructure::operator==(const BlockStructure& other) const {
    if (sizes_ != other.sizes_) return false;
    for (int l = 0; l < r_; ++l) {
        for (int k = 0; k < l; ++k) {
            const auto& a = blocks_[l][k];
            const auto& b = other.blocks_[l][k];
            if (a.size() != b.size()) return false;
            for (size_t j = 0; j < a.size(); ++j) {
                if (a[j] != b[j]) return false;
            }
        }
    }
    return true;
}

// ---- validation ----------------------------------------------------------

namespace {

// Frobenius distance from x to the span of an orthonormal basis.
double span_residual(const Matrix& x, const std::vector<Matrix>& basis) {
    Matrix rem = x;
    for (const Matrix& a : basis) {
        rem -= block_inner(rem, a) * a;
    }
    return rem.norm();
}

}  // namespace

StructureReport validate_structure(const BlockStructure& s, double tol_struct) {
    StructureReport rep;
    const int r = s.rank();
    double scale = 0.0;
    for (int l = 0; l < r; ++l) {
        for (int k = 0; k < l; ++k) {
            for (const Matrix& a : s.block_basis(l, k)) {
                scale = std::max(scale, a.cwiseAbs().maxCoeff());
            }
        }
    }
    rep.tolerance = tol_struct * std::max(1.0, scale);

    for (int i = 0; i < r; ++i) {
        for (int k = i + 1; k < r; ++k) {
            for (int l = k + 1; l < r; ++l) {
                // V1: A in V_lk, B in V_ki  =>  AB in V_li
                for (const Matrix& a : s.block_basis(l, k)) {
                    for (const Matrix& b : s.block_basis(k, i)) {
                        rep.v1_residual = std::max(
                            rep.v1_residual, span_residual(a * b, s.block_basis(l, i)));
                    }
                }
                // V2: A in V_li, B in V_ki  =>  AB^T in V_lk
                for (const Matrix& a : s.block_basis(l, i)) {
                    for (const Matrix& b : s.block_basis(k, i)) {
                        rep.v2_residual = std::max(
                            rep.v2_residual,
                            span_residual(a * b.transpose(), s.block_basis(l, k)));
                    }
                }
            }
        }
    }
    // V3 in polarized form on basis pairs: AB^T + BA^T must be scalar.
    for (int l = 0; l < r; ++l) {
        for (int k = 0; k < l; ++k) {
            const auto& basis = s.block_basis(l, k);
            for (size_t a = 0; a < basis.size(); ++a) {
                for (size_t b = a; b < basis.size(); ++b) {
                    Matrix m = basis[a] * basis[b].transpose() +
                               basis[b] * basis[a].transpose();
                    Matrix dev = m - (m.trace() / m.rows()) * Matrix::Identity(m.rows(), m.rows());
                    rep.v3_residual = std::max(rep.v3_residual, dev.norm());
                }
            }
        }
    }
    const auto& zb = s.z_basis();
    for (size_t a = 0; a < zb.size(); ++a) {
        for (size_t b = a; b < zb.size(); ++b) {
            double g = BlockStructure::inner(zb[a], zb[b]) - (a == b ? 1.0 : 0.0);
            rep.orthonormality_residual = std::max(rep.orthonormality_residual, std::abs(g));
        }
    }
    rep.v1_pass = rep.v1_residual <= rep.tolerance;
    rep.v2_pass = rep.v2_residual <= rep.tolerance;
    rep.v3_pass = rep.v3_residual <= rep.tolerance;
    return rep;
}

// ---- presets --------------------------------------------------------------

BlockStructure preset(const std::string& name) {
    const Matrix one = Matrix::Constant(1, 1, 1.0);
    if (name == "vinberg") {
        // Sym(3) with the (2,1) entry removed: V_21 = {0}, V_31 = V_32 = R.
        std::map<std::pair<int, int>, std::vector<Matrix>> blocks;
        blocks[{2, 0}] = {one};
        blocks[{2, 1}] = {one};
        return BlockStructure({1, 1, 1}, std::move(blocks));
    }
    if (name == "dual_vinberg") {
        // 5x5 matrix realization of the dual of the "vinberg" structure:
        // partition (3,1,1) with one-dimensional blocks V_21, V_31.
        std::map<std::pair<int, int>, std::vector<Matrix>> blocks;
        Matrix b21 = Matrix::Zero(1, 3);
        b21(0, 1) = 1.0;
        Matrix b31 = Matrix::Zero(1, 3);
        b31(0, 2) = 1.0;
        blocks[{1, 0}] = {b21};
        blocks[{2, 0}] = {b31};
        return BlockStructure({3, 1, 1}, std::move(blocks));
    }
    if (name.rfind("sym(", 0) == 0 && name.back() == ')') {
        int n = 0;
        try {
            n = std::stoi(name.substr(4, name.size() - 5));
        } catch (const std::exception&) {
            throw ParseError("cannot parse preset name: " + name);
        }
        if (n <= 0) throw ParseError("sym(n) requires n >= 1");
        std::map<std::pair<int, int>, std::vector<Matrix>> blocks;
        for (int l = 1; l < n; ++l) {
            for (int k = 0; k < l; ++k) {
                blocks[{l, k}] = {one};
            }
        }
        return BlockStructure(std::vector<int>(n, 1), std::move(blocks));
    }
    throw ParseError("unknown preset: " + name);
}

// ---- graphs ----------------------------------------------------------------

bool Graph::adjacent(int a, int b) const {
    for (auto [u, v] : edges) {
        if ((u == a && v == b) || (u == b && v == a)) return true;
    }
    return false;
}

namespace {

std::vector<std::vector<bool>> adjacency(const Graph& g) {
    std::vector<std::vector<bool>> adj(g.vertex_count, std::vector<bool>(g.vertex_count, false));
    for (auto [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count) {
            throw ParseError("edge endpoint out of range");
        }
        if (u == v) continue;
        adj[u][v] = adj[v][u] = true;
    }
    return adj;
}

// Exhaustive induced-subgraph scan over vertex quadruples: reports an induced
// 4-path (A4) or a chordless 4-cycle.  Any longer chordless cycle contains an
// induced 4-path, so quadruples are enough for both witnesses.
std::optional<NotHomogeneous> scan_quadruples(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::optional<NotHomogeneous> cycle;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    int quad[4] = {a, b, c, d};
                    int deg[4] = {0, 0, 0, 0};
                    int edges = 0;
                    for (int p = 0; p < 4; ++p)
                        for (int q = p + 1; q < 4; ++q)
                            if (adj[quad[p]][quad[q]]) {
                                ++deg[p];
                                ++deg[q];
                                ++edges;
                            }
                    if (edges != 3 && edges != 4) continue;
                    auto path_from = [&](int start) {
                        std::vector<int> order{quad[start]};
                        std::vector<bool> used(4, false);
                        used[start] = true;
                        for (int step = 0; step < 3; ++step) {
                            for (int q = 0; q < 4; ++q) {
                                if (!used[q] && adj[order.back()][quad[q]]) {
                                    order.push_back(quad[q]);
                                    used[q] = true;
                                    break;
                                }
                            }
                        }
                        for (int& v : order) ++v;  // 1-based labels
                        return order;
                    };
                    int sorted_deg[4];
                    std::copy(deg, deg + 4, sorted_deg);
                    std::sort(sorted_deg, sorted_deg + 4);
                    if (edges == 3 && sorted_deg[0] == 1 && sorted_deg[1] == 1 &&
                        sorted_deg[2] == 2 && sorted_deg[3] == 2) {
                        // degrees (1,1,2,2): an induced path on 4 vertices
                        int endpoint = 0;
                        while (deg[endpoint] != 1) ++endpoint;
                        return NotHomogeneous(NotHomogeneous::Kind::InducedPath,
                                              path_from(endpoint),
                                              "graph contains an induced 4-path");
                    }
                    if (edges == 4 && deg[0] == 2 && deg[1] == 2 && deg[2] == 2 && deg[3] == 2 &&
                        !cycle) {
                        cycle = NotHomogeneous(NotHomogeneous::Kind::ChordlessCycle, path_from(0),
                                               "graph contains a chordless 4-cycle");
                    }
                }
    return cycle;
}

// Maximum cardinality search; returns the pick order.
std::vector<int> mcs_order(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> order;
    std::vector<bool> picked(n, false);
    std::vector<int> weight(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!picked[v] && (best == -1 || weight[v] > weight[best])) best = v;
        }
        picked[best] = true;
        order.push_back(best);
        for (int v = 0; v < n; ++v) {
            if (!picked[v] && adj[best][v]) ++weight[v];
        }
    }
    return order;
}

// The MCS order is a (reversed) perfect elimination ordering iff the graph is
// chordal: every vertex's already-picked neighbours must form a clique.
bool is_chordal(const std::vector<std::vector<bool>>& adj) {
    auto order = mcs_order(adj);
    const int n = static_cast<int>(adj.size());
    std::vector<int> position(n);
    for (int p = 0; p < n; ++p) position[order[p]] = p;
    for (int p = 0; p < n; ++p) {
        int v = order[p];
        for (int q1 = 0; q1 < p; ++q1) {
            if (!adj[v][order[q1]]) continue;
            for (int q2 = q1 + 1; q2 < p; ++q2) {
                if (adj[v][order[q2]] && !adj[order[q1]][order[q2]]) return false;
            }
        }
    }
    return true;
}

// Finds a chordless cycle by brute force over vertex subsets (smallest first):
// an induced subgraph that is a cycle of length >= 4 has no chords.
NotHomogeneous chordless_cycle_witness(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    for (int size = 4; size <= n; ++size) {
        std::vector<int> subset(size);
        std::function<std::optional<std::vector<int>>(int, int)> rec =
            [&](int depth, int start) -> std::optional<std::vector<int>> {
            if (depth == size) {
                std::vector<int> deg(size, 0);
                for (int p = 0; p < size; ++p)
                    for (int q = p + 1; q < size; ++q)
                        if (adj[subset[p]][subset[q]]) {
                            ++deg[p];
                            ++deg[q];
                        }
                for (int d : deg)
                    if (d != 2) return std::nullopt;
                // connected 2-regular induced subgraph on `size` vertices = cycle
                std::vector<int> cyc{subset[0]};
                std::vector<bool> used(size, false);
                used[0] = true;
                while (static_cast<int>(cyc.size()) < size) {
                    bool advanced = false;
                    for (int q = 0; q < size; ++q) {
                        if (!used[q] && adj[cyc.back()][subset[q]]) {
                            cyc.push_back(subset[q]);
                            used[q] = true;
                            advanced = true;
                            break;
                        }
                    }
                    if (!advanced) return std::nullopt;  // two components
                }
                if (!adj[cyc.back()][cyc.front()]) return std::nullopt;
                for (int& v : cyc) ++v;
                return cyc;
            }
            for (int v = start; v < n; ++v) {
                subset[depth] = v;
                if (auto res = rec(depth + 1, v + 1)) return res;
            }
            return std::nullopt;
        };
        if (auto cyc = rec(0, 0)) {
            return NotHomogeneous(NotHomogeneous::Kind::ChordlessCycle, *cyc,
                                  "graph contains a chordless cycle");
        }
    }
    throw ConeError("internal error: chordality check disagrees with cycle scan");
}

// Depth-first search over vertex orderings; placing vertex v at position p is
// admissible when, for all placed i < k < p, edges (i,k),(k,p) force (i,p)
// and edges (i,k),(i,p) force (k,p).  These are V1 and V2 for R-blocks.
bool ordering_search(const std::vector<std::vector<bool>>& adj, std::vector<int>& order) {
    const int n = static_cast<int>(adj.size());
    std::vector<bool> used(n, false);
    std::function<bool(int)> rec = [&](int pos) {
        if (pos == n) return true;
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool permitted = true;
            for (int pi = 0; permitted && pi < pos; ++pi) {
                for (int pk = pi + 1; permitted && pk < pos; ++pk) {
                    int i = order[pi], k = order[pk];
                    if (adj[i][k] && adj[k][v] && !adj[i][v]) permitted = false;
                    if (adj[i][v] && adj[i][k] && !adj[k][v]) permitted = false;
                }
            }
            if (!permitted) continue;
            order[pos] = v;
            used[v] = true;
            if (rec(pos + 1)) return true;
            used[v] = false;
        }
        return false;
    };
    order.assign(n, -1);
    return rec(0);
}

}  // namespace

GraphStructureResult structure_from_graph(const Graph& g) {
    if (g.vertex_count <= 0) throw ParseError("graph must have at least one vertex");
    if (g.vertex_count > 12) {
        throw ConeError("graphs with more than 12 vertices are unsupported");
    }
    auto adj = adjacency(g);

    if (auto a4 = scan_quadruples(adj)) throw *a4;
    if (!is_chordal(adj)) throw chordless_cycle_witness(adj);

    std::vector<int> order;
    if (!ordering_search(adj, order)) {
        // cannot happen for decomposable A4-free graphs
        throw ConeError("internal error: no admissible vertex ordering found");
    }

    const Matrix one = Matrix::Constant(1, 1, 1.0);
    std::map<std::pair<int, int>, std::vector<Matrix>> blocks;
    for (int l = 1; l < g.vertex_count; ++l) {
        for (int k = 0; k < l; ++k) {
            if (adj[order[l]][order[k]]) blocks[{l, k}] = {one};
        }
    }
    return GraphStructureResult{
        BlockStructure(std::vector<int>(g.vertex_count, 1), std::move(blocks)), order};
}

// ---- file formats ----------------------------------------------------------

std::string structure_to_json(const BlockStructure& s) {
    nlohmann::json j;
    j["sizes"] = s.sizes();
    nlohmann::json blocks = nlohmann::json::object();
    for (int l = 1; l < s.rank(); ++l) {
        for (int k = 0; k < l; ++k) {
            const auto& basis = s.block_basis(l, k);
            if (basis.empty()) continue;
            nlohmann::json list = nlohmann::json::array();
            for (const Matrix& a : basis) {
                std::vector<double> flat;
                for (int row = 0; row < a.rows(); ++row)
                    for (int col = 0; col < a.cols(); ++col) flat.push_back(a(row, col));
                list.push_back(flat);
            }
            blocks[std::to_string(l + 1) + "," + std::to_string(k + 1)] = list;
        }
    }
    j["blocks"] = blocks;
    return j.dump(2);
}

BlockStructure structure_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid cone-spec JSON: ") + e.what());
    }
    try {
        std::vector<int> sizes = j.at("sizes").get<std::vector<int>>();
        std::map<std::pair<int, int>, std::vector<Matrix>> blocks;
        if (j.contains("blocks")) {
            for (auto& [key, list] : j.at("blocks").items()) {
                auto comma = key.find(',');
                if (comma == std::string::npos) throw ParseError("block key must be \"l,k\"");
                int l = std::stoi(key.substr(0, comma)) - 1;
                int k = std::stoi(key.substr(comma + 1)) - 1;
                if (l < 0 || k < 0 || l >= static_cast<int>(sizes.size()) || k >= l) {
                    throw ParseError("block key out of range: " + key);
                }
                std::vector<Matrix> span;
                for (const auto& flat : list) {
                    std::vector<double> vals = flat.get<std::vector<double>>();
                    if (static_cast<int>(vals.size()) != sizes[l] * sizes[k]) {
                        throw ParseError("block entry count does not match sizes for " + key);
                    }
                    Matrix a(sizes[l], sizes[k]);
                    for (int row = 0; row < sizes[l]; ++row)
                        for (int col = 0; col < sizes[k]; ++col)
                            a(row, col) = vals[row * sizes[k] + col];
                    span.push_back(a);
                }
                blocks[{l, k}] = span;
            }
        }
        return BlockStructure(sizes, std::move(blocks));
    } catch (const ParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid cone-spec JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid numeric field in cone-spec JSON");
    }
}

namespace {
std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
}  // namespace

BlockStructure load_structure(const std::string& path) {
    return structure_from_json(read_file(path));
}

void save_structure(const std::string& path, const BlockStructure& s) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << structure_to_json(s) << "\n";
}

Graph load_graph(const std::string& path) {
    std::istringstream in(read_file(path));
    Graph g;
    int u, v;
    while (in >> u >> v) {
        if (u < 1 || v < 1) throw ParseError("graph vertices must be 1-based positive labels");
        g.edges.emplace_back(u - 1, v - 1);
        g.vertex_count = std::max({g.vertex_count, u, v});
    }
    if (!in.eof()) throw ParseError("malformed graph file: expected \"i j\" pairs");
    return g;
}

Matrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid matrix JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("matrix")) j = j["matrix"];
    if (!j.is_array() || j.empty()) throw ParseError("matrix JSON must be an array of rows");
    try {
        const int rows = static_cast<int>(j.size());
        const int cols = static_cast<int>(j[0].size());
        Matrix m(rows, cols);
        for (int row = 0; row < rows; ++row) {
            if (static_cast<int>(j[row].size()) != cols) {
                throw ParseError("matrix JSON rows have inconsistent lengths");
            }
            for (int col = 0; col < cols; ++col) m(row, col) = j[row][col].get<double>();
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid matrix JSON: ") + e.what());
    }
}

Matrix load_matrix(const std::string& path) { return matrix_from_json(read_file(path)); }

std::string matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int row = 0; row < m.rows(); ++row) {
        nlohmann::json r = nlohmann::json::array();
        for (int col = 0; col < m.cols(); ++col) r.push_back(m(row, col));
        rows.push_back(r);
    }
    return rows.dump();
}

namespace {
std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}
}  // namespace

std::string structure_hash(const BlockStructure& s) { return hex64(fnv1a(structure_to_json(s))); }

std::string matrix_hash(const Matrix& m) {
    std::ostringstream out;
    for (int row = 0; row < m.rows(); ++row)
        for (int col = 0; col < m.cols(); ++col) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g ", m(row, col));
            out << buf;
        }
    return hex64(fnv1a(out.str()));
}

Matrix materialize_operator(const BlockStructure& s,
                            const std::function<Matrix(const Matrix&)>& f) {
    const int d = s.dim_z();
    Matrix op(d, d);
    for (int a = 0; a < d; ++a) {
        op.col(a) = s.coords(f(s.z_basis()[a]));
    }
    return op;
}

}  // namespace homcone
