#include <doctest.h>

#include "helpers.hpp"
#include "homcone/validation.hpp"

using namespace homcone;
using namespace homcone::testing;

namespace {
const char* kStructures[] = {"vinberg", "sym(3)", "dual_vinberg"};

double block_pair_inner(const BlockStructure& s, const Matrix& a, const Matrix& b, int l,
                        int k) {
    Matrix ab = a.block(s.offset(l), s.offset(k), s.sizes()[l], s.sizes()[k]);
    Matrix bb = b.block(s.offset(l), s.offset(k), s.sizes()[l], s.sizes()[k]);
    return (ab * bb.transpose()).trace() / s.sizes()[l];
}
}  // namespace

TEST_CASE("quadratic map of a unit head vector is the diagonal block unit") {
    auto s = preset("sym(3)");
    for (int i = 0; i < 3; ++i) {
        Vector w = Vector::Zero(s.domain_dim(i));
        w[0] = 1.0;
        Matrix q = quadratic_map(s, i, w);
        Matrix expected = Matrix::Zero(3, 3);
        expected(i, i) = 1.0;
        CHECK((q - expected).norm() == 0.0);
    }
}

TEST_CASE("vinberg quadratic map in the first column space") {
    auto s = preset("vinberg");
    REQUIRE(s.domain_dim(0) == 2);
    Vector w = shape_of({1.5, -2.0});  // (a, b) in the (1,1) and (3,1) slots
    Matrix q = quadratic_map(s, 0, w);
    CHECK(q(0, 0) == doctest::Approx(1.5 * 1.5).epsilon(1e-14));
    CHECK(q(2, 0) == doctest::Approx(1.5 * -2.0).epsilon(1e-14));
    CHECK(q(2, 2) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(q(1, 1) == 0.0);
}

TEST_CASE("quadratic-form identity <xi, q_i(x)> = vc^T phi_i(xi) vc") {
    Rng rng(11);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix xi = random_space_element(s, rng);
            for (int i = 0; i < s.rank(); ++i) {
                Vector w = Vector::Random(s.domain_dim(i));
                double lhs = BlockStructure::inner(xi, quadratic_map(s, i, w));
                double rhs = w.dot(phi(s, i, xi) * w);
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("vinberg phi matrices are the quoted 2x2 minors") {
    auto s = preset("vinberg");
    Rng rng(3);
    Matrix xi = random_space_element(s, rng);
    Matrix p1 = phi(s, 0, xi);
    CHECK(p1(0, 0) == doctest::Approx(xi(0, 0)).epsilon(1e-14));
    CHECK(p1(0, 1) == doctest::Approx(xi(2, 0)).epsilon(1e-14));
    CHECK(p1(1, 1) == doctest::Approx(xi(2, 2)).epsilon(1e-14));
    Matrix p2 = phi(s, 1, xi);
    CHECK(p2(0, 0) == doctest::Approx(xi(1, 1)).epsilon(1e-14));
    CHECK(p2(0, 1) == doctest::Approx(xi(2, 1)).epsilon(1e-14));
    CHECK(p2(1, 1) == doctest::Approx(xi(2, 2)).epsilon(1e-14));
    Matrix p3 = phi(s, 2, xi);
    CHECK(p3(0, 0) == doctest::Approx(xi(2, 2)).epsilon(1e-14));
    CHECK((phi_reduced(s, 0, xi)(0, 0)) == doctest::Approx(xi(2, 2)).epsilon(1e-14));
}

TEST_CASE("phi at the identity is the diagonal of block sizes") {
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int i = 0; i < s.rank(); ++i) {
            Matrix p = phi(s, i, id);
            Vector expected(s.domain_dim(i));
            int at = 0;
            expected[at++] = s.sizes()[i];
            for (int l = i + 1; l < s.rank(); ++l)
                for (int c = 0; c < s.block_dim(l, i); ++c) expected[at++] = s.sizes()[l];
            CHECK((p - Matrix(expected.asDiagonal())).norm() <= 1e-13);
        }
    }
}

TEST_CASE("block layout of phi: head entry and weighted border") {
    Rng rng(17);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix xi = random_space_element(s, rng);
        for (int i = 0; i < s.rank(); ++i) {
            Matrix p = phi(s, i, xi);
            CHECK(std::abs(p(0, 0) - s.sizes()[i] * s.diag_coefficient(xi, i)) <= 1e-12);
            int at = 1;
            for (int l = i + 1; l < s.rank(); ++l) {
                for (const Matrix& a : s.block_basis(l, i)) {
                    double vc = (xi.block(s.offset(l), s.offset(i), s.sizes()[l], s.sizes()[i]) *
                                 a.transpose())
                                    .trace() /
                                s.sizes()[l];
                    CHECK(std::abs(p(0, at) - s.sizes()[l] * vc) <= 1e-12);
                    ++at;
                }
            }
            Matrix reduced = phi_reduced(s, i, xi);
            CHECK((p.bottomRightCorner(p.rows() - 1, p.cols() - 1) - reduced).norm() == 0.0);
        }
    }
}

TEST_CASE("vinberg adjoint of phi_1 places the 2x2 argument on rows 1 and 3") {
    auto s = preset("vinberg");
    Matrix x(2, 2);
    x << 1.25, -0.5, -0.5, 3.0;
    Matrix z = phi_adjoint(s, 0, x);
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = 1.25;
    expected(2, 0) = expected(0, 2) = -0.5;
    expected(2, 2) = 3.0;
    CHECK((z - expected).norm() <= 1e-14);
    CHECK(phi_adjoint(s, 0, Matrix::Zero(2, 2)).norm() == 0.0);
}

TEST_CASE("adjointness of phi and phi_reduced") {
    Rng rng(23);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix xi = random_space_element(s, rng);
            for (int i = 0; i < s.rank(); ++i) {
                Matrix x = random_symmetric(s.domain_dim(i), rng);
                double lhs = BlockStructure::inner(xi, phi_adjoint(s, i, x));
                double rhs = (phi(s, i, xi) * x).trace();
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
                if (s.domain_dim(i) > 1) {
                    Matrix xr = random_symmetric(s.domain_dim(i) - 1, rng);
                    double lr = BlockStructure::inner(xi, phi_reduced_adjoint(s, i, xr));
                    double rr = (phi_reduced(s, i, xi) * xr).trace();
                    CHECK(std::abs(lr - rr) <= 1e-12 * std::max(1.0, std::abs(rr)));
                }
            }
        }
    }
}

TEST_CASE("power function on the cone: normalization and determinant case") {
    auto s = preset("sym(3)");
    Matrix id = Matrix::Identity(3, 3);
    Vector n = sizes_shape(s);
    CHECK(power_cone(s, n, id) == doctest::Approx(1.0));
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix x = random_cone_point(s, rng);
        CHECK(power_cone(s, n, x) == doctest::Approx(x.determinant()).epsilon(1e-12));
    }
}

TEST_CASE("power functions agree with the character through the decompositions") {
    Rng rng(37);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int trial = 0; trial < 25; ++trial) {
            auto t = random_triangular(s, rng);
            Vector shape = random_shape(s, Side::Q, rng);
            double chi = character(shape, t);
            CHECK(relative_error(power_cone(s, shape, action(t, id)), chi) <= 1e-12);
            CHECK(relative_error(power_dual(s, shape, dual_action(t, id)), chi) <= 1e-11);
        }
        CHECK(power_dual(s, sizes_shape(s), id) == doctest::Approx(1.0));
    }
}

TEST_CASE("multiplicativity of the power functions under the group actions") {
    Rng rng(41);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 34; ++trial) {
            auto t = random_triangular(s, rng);
            Vector shape = random_shape(s, Side::Q, rng);
            Matrix x = random_cone_point(s, rng);
            Matrix xi = random_dual_point(s, rng);
            double chi = character(shape, t);
            CHECK(relative_error(power_cone(s, shape, action(t, x)),
                                 chi * power_cone(s, shape, x)) <= 1e-11);
            CHECK(relative_error(power_dual(s, shape, dual_action(t, xi)),
                                 chi * power_dual(s, shape, xi)) <= 1e-11);
        }
    }
}

TEST_CASE("duality identity Delta_s(x) = delta_{-s}(pi(x^{-1}))") {
    Rng rng(43);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 34; ++trial) {
            Matrix x = random_cone_point(s, rng);
            Vector shape = random_shape(s, Side::Q, rng);
            double lhs = power_cone(s, shape, x);
            double rhs = power_dual(s, -shape, s.project(x.inverse()));
            CHECK(relative_error(lhs, rhs) <= 1e-11);
        }
    }
}

TEST_CASE("determinants of phi transform by the weight character") {
    Rng rng(47);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int trial = 0; trial < 34; ++trial) {
            auto t = random_triangular(s, rng);
            Matrix xi = dual_action(t, id);
            for (int i = 0; i < s.rank(); ++i) {
                Vector weights = Vector::Zero(s.rank());
                weights[i] = 1.0;
                for (int l = i + 1; l < s.rank(); ++l) weights[l] = s.block_dim(l, i);
                double lhs = phi(s, i, xi).determinant();
                double rhs = character(weights, t) * phi(s, i, id).determinant();
                CHECK(relative_error(lhs, rhs) <= 1e-11);
                if (s.domain_dim(i) > 1) {
                    weights[i] = 0.0;
                    double lr = phi_reduced(s, i, xi).determinant();
                    double rr = character(weights, t) * phi_reduced(s, i, id).determinant();
                    CHECK(relative_error(lr, rr) <= 1e-11);
                }
            }
        }
    }
}

TEST_CASE("trace identity with weights n_l/n_i") {
    Rng rng(53);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int trial = 0; trial < 34; ++trial) {
            Matrix alpha = random_space_element(s, rng);
            Matrix beta = random_space_element(s, rng);
            for (int i = 0; i < s.rank(); ++i) {
                Matrix pid_inv = phi(s, i, id).inverse();
                double lhs = (phi(s, i, alpha) * pid_inv * phi(s, i, beta) * pid_inv).trace();
                if (s.domain_dim(i) > 1) {
                    Matrix rid_inv = phi_reduced(s, i, id).inverse();
                    lhs -= (phi_reduced(s, i, alpha) * rid_inv * phi_reduced(s, i, beta) *
                            rid_inv)
                               .trace();
                }
                double rhs = s.diag_coefficient(alpha, i) * s.diag_coefficient(beta, i);
                for (int l = i + 1; l < s.rank(); ++l) {
                    if (s.block_dim(l, i) == 0) continue;
                    rhs += 2.0 * s.sizes()[l] / s.sizes()[i] *
                           block_pair_inner(s, alpha, beta, l, i);
                }
                CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("gradient of log Delta reduces to the projected inverse at shape n") {
    Rng rng(59);
    auto s = preset("sym(3)");
    Matrix x = random_cone_point(s, rng);
    Matrix g = grad_log_power_cone(s, sizes_shape(s), x);
    CHECK((g - x.inverse()).norm() <= 1e-11);
}

TEST_CASE("analytic gradients match central finite differences") {
    Rng rng(61);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 6; ++trial) {
            Vector shape = random_shape(s, Side::Q, rng);
            Matrix x = random_cone_point(s, rng);
            double h = fd_step(x);
            Matrix fd = fd_gradient(
                s, [&](const Matrix& p) { return std::log(power_cone(s, shape, p)); }, x, h);
            CHECK(relative_error(grad_log_power_cone(s, shape, x), fd) <= 1e-6);

            Matrix xi = random_dual_point(s, rng);
            h = fd_step(xi);
            Matrix fdd = fd_gradient(
                s, [&](const Matrix& p) { return std::log(power_dual(s, shape, p)); }, xi, h);
            CHECK(relative_error(grad_log_power_dual(s, shape, xi), fdd) <= 1e-6);
        }
    }
}

TEST_CASE("power functions reject points outside the open cones") {
    auto s = preset("vinberg");
    Matrix neg = -Matrix::Identity(3, 3);
    Vector shape = shape_of({1.0, 1.0, 1.5});
    CHECK_THROWS_AS(power_cone(s, shape, neg), NotInCone);
    CHECK_THROWS_AS(power_dual(s, shape, neg), NotInDualCone);
    CHECK_FALSE(in_cone(s, neg));
    CHECK_FALSE(in_dual_cone(s, neg));
    // boundary of Q_V but not P_V: vinberg with a zero (3,3) entry
    Matrix edge = Matrix::Identity(3, 3);
    edge(2, 2) = 0.0;
    CHECK_FALSE(in_dual_cone(s, edge));
}
