#include "homcone/validation.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace homcone {

Matrix fd_gradient(const BlockStructure& s, const std::function<double(const Matrix&)>& f,
                   const Matrix& point, double h) {
    const int d = s.dim_z();
    Vector c(d);
    for (int a = 0; a < d; ++a) {
        const Matrix& e = s.z_basis()[a];
        c[a] = (f(point + h * e) - f(point - h * e)) / (2.0 * h);
    }
    return s.from_coords(c);
}

ZOperator fd_jacobian(const BlockStructure& s,
                      const std::function<Matrix(const Matrix&)>& g, const Matrix& point,
                      double h) {
    const int d = s.dim_z();
    Matrix jac(d, d);
    for (int b = 0; b < d; ++b) {
        const Matrix& e = s.z_basis()[b];
        jac.col(b) = s.coords(g(point + h * e) - g(point - h * e)) / (2.0 * h);
    }
    return ZOperator(s, std::move(jac));
}

bool FixtureReport::pass() const {
    for (const Line& line : lines) {
        if (std::abs(line.computed - line.expected) > line.tolerance) return false;
    }
    return true;
}

std::string FixtureReport::to_text() const {
    std::ostringstream out;
    out << (pass() ? "[PASS] " : "[FAIL] ") << name << "\n";
    for (const Line& line : lines) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "  %-40s computed=%.17g expected=%.17g\n",
                      line.label.c_str(), line.computed, line.expected);
        out << buf;
    }
    return out.str();
}

std::string FixtureReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["pass"] = pass();
    j["lines"] = nlohmann::json::array();
    for (const Line& line : lines) {
        j["lines"].push_back({{"label", line.label},
                              {"computed", line.computed},
                              {"expected", line.expected},
                              {"tolerance", line.tolerance}});
    }
    return j.dump();
}

Matrix triangle_product(const Matrix& x, const Matrix& y) {
    Matrix lower = x.triangularView<Eigen::StrictlyLower>();
    lower += 0.5 * x.diagonal().asDiagonal().toDenseMatrix();
    return lower * y + y * lower.transpose();
}

Matrix projected_product(const Matrix& a, const Matrix& b) {
    Matrix p = a * b;
    p(1, 2) = 0.0;
    p(2, 1) = 0.0;
    return p;
}

FixtureReport fixture_poset_decomposition() {
    FixtureReport rep;
    rep.name = "poset-decomposition mismatch (order 1<3, 2<3, 3<4)";

    const Matrix x = Matrix::Identity(4, 4);
    // the four summands reported for X = I_4
    std::vector<Vector> diags(4, Vector::Zero(4));
    diags[0] << 1, 0, 0, -1;
    diags[1] << 0, 1, 0, -1;
    diags[2] << 0, 0, 1, 1;
    diags[3] << 0, 0, 0, 1;

    Matrix sum = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) sum += Matrix(diags[i].asDiagonal());

    Vector expected(4);
    expected << 1, 1, 1, 0;
    for (int j = 0; j < 4; ++j) {
        rep.lines.push_back({"sum entry (" + std::to_string(j + 1) + "," +
                                 std::to_string(j + 1) + ")",
                             sum(j, j), expected[j]});
    }
    rep.lines.push_back({"deviation norm |sum - X|", (sum - x).norm(), 1.0});
    return rep;
}

FixtureReport fixture_triangle_product() {
    FixtureReport rep;
    rep.name = "projected-product non-inverse witness";

    Matrix t(3, 3);
    t << 1, 0, 0, 1, 1, 0, 1, 0, 1;

    // lower triangular matrices multiply without projection
    Matrix u(3, 3);
    u << 2, 0, 0, 3, 1, 0, -1, 0, 4;
    rep.lines.push_back(
        {"T . U = TU on lower triangulars", (projected_product(t, u) - t * u).norm(), 0.0});

    Matrix theta = projected_product(t.transpose(), t);
    Matrix theta_expected(3, 3);
    theta_expected << 3, 1, 1, 1, 1, 0, 1, 0, 1;
    rep.lines.push_back({"theta = T^T . T matches", (theta - theta_expected).norm(), 0.0});

    Matrix tinv = t.inverse();
    Matrix xmat = projected_product(tinv, tinv.transpose());
    Matrix x_expected(3, 3);
    x_expected << 1, -1, -1, -1, 2, 0, -1, 0, 2;
    rep.lines.push_back({"X = T^{-1} . T^{-T} matches", (xmat - x_expected).norm(), 0.0});

    Matrix xtheta = projected_product(xmat, theta);
    Matrix xtheta_expected(3, 3);
    xtheta_expected << 1, 0, 0, -1, 1, 0, -1, 0, 1;
    rep.lines.push_back({"X . theta matches", (xtheta - xtheta_expected).norm(), 0.0});
    rep.lines.push_back({"X . theta differs from identity",
                         (xtheta - Matrix::Identity(3, 3)).norm(), std::sqrt(2.0)});

    Matrix thetax = projected_product(theta, xmat);
    Matrix thetax_expected(3, 3);
    thetax_expected << 1, -1, -1, 0, 1, 0, 0, 0, 1;
    rep.lines.push_back({"theta . X matches", (thetax - thetax_expected).norm(), 0.0});
    return rep;
}

FixtureReport fixture_variance_counterexample() {
    FixtureReport rep;
    rep.name = "variance counterexample (15 vs 13, lambda = 1)";

    Matrix theta0(3, 3);
    theta0 << 3, 1, 1, 1, 1, 0, 1, 0, 1;
    Matrix m0(3, 3);
    m0 << 1, -1, -1, -1, 2, 0, -1, 0, 2;

    Matrix ti = theta0.inverse();
    double second_derivative = (ti * ti).trace();
    rep.lines.push_back({"tr(theta0^{-1} I theta0^{-1} I)", second_derivative, 15.0});
    rep.lines.push_back({"tr(m0^2) (claimed formula)", m0.squaredNorm(), 13.0});

    // Cross-check the 15 against variance_Q on the vinberg structure: the
    // counterexample's coordinates are the vinberg ones reversed.
    BlockStructure vin = preset("vinberg");
    Matrix w = Matrix::Zero(3, 3);
    w(0, 2) = w(1, 1) = w(2, 0) = 1.0;
    Matrix m_vin = w * m0 * w;  // relabel into Z_V
    Vector ones = Vector::Ones(3);
    ZOperator var = variance_Q(vin, ones, m_vin);
    Matrix identity = Matrix::Identity(3, 3);
    double pairing = BlockStructure::inner(var.apply(identity), identity);
    rep.lines.push_back({"<variance_Q(1,m) I, I> on vinberg", pairing, 15.0, 1e-10});
    return rep;
}

std::vector<FixtureReport> run_all_fixtures() {
    return {fixture_poset_decomposition(), fixture_triangle_product(),
            fixture_variance_counterexample()};
}

}  // namespace homcone
