#include <doctest.h>

#include "helpers.hpp"

using namespace homcone;
using namespace homcone::testing;

namespace {
const char* kStructures[] = {"vinberg", "sym(3)", "dual_vinberg"};
}

TEST_CASE("character basics") {
    auto s = preset("sym(3)");
    auto id = TriangularFactor::identity(s);
    Vector ones = Vector::Ones(3);
    CHECK(character(ones, id) == 1.0);

    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 2.0, 3.0, 5.0;
    auto t = TriangularFactor::from_matrix(s, d);
    CHECK(character(ones, t) == doctest::Approx(900.0).epsilon(1e-14));
}

TEST_CASE("character is multiplicative") {
    Rng rng(71);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 25; ++trial) {
            auto t = random_triangular(s, rng);
            auto u = random_triangular(s, rng);
            Vector shape = random_shape(s, Side::Q, rng);
            double ratio = character(shape, t * u) /
                           (character(shape, t) * character(shape, u));
            CHECK(std::abs(ratio - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("factor construction validates membership and positivity") {
    auto s = preset("vinberg");
    Matrix bad = Matrix::Identity(3, 3);
    bad(1, 0) = 0.5;  // V_21 = {0}
    CHECK_THROWS_AS(TriangularFactor::from_matrix(s, bad), NotInSpace);
    Matrix neg = -Matrix::Identity(3, 3);
    CHECK_THROWS_AS(TriangularFactor::from_matrix(s, neg), NotPositiveDefinite);
}

TEST_CASE("actions: identity, stability of the block space, adjointness") {
    Rng rng(73);
    for (const char* name : kStructures) {
        auto s = preset(name);
        auto id = TriangularFactor::identity(s);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix x = random_space_element(s, rng);
            CHECK((action(id, x) - x).norm() == 0.0);
            auto t = random_triangular(s, rng);
            CHECK(s.in_space(action(t, x), 1e-10));
            Matrix xi = random_space_element(s, rng);
            double lhs = BlockStructure::inner(dual_action(t, xi), x);
            double rhs = BlockStructure::inner(xi, action(t, x));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("factor products stay in the group") {
    Rng rng(79);
    auto s = preset("dual_vinberg");
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_triangular(s, rng);
        auto u = random_triangular(s, rng);
        auto prod = t * u;  // from_matrix validates membership
        CHECK((prod.matrix() - t.matrix() * u.matrix()).norm() <= 1e-12);
        auto inv = t.inverse();
        CHECK((inv.matrix() * t.matrix() - Matrix::Identity(s.size(), s.size())).norm() <=
              1e-12);
    }
}

TEST_CASE("cholesky: diagonal and identity cases") {
    auto s = preset("vinberg");
    Matrix id = Matrix::Identity(3, 3);
    CHECK((cholesky(s, id).matrix() - id).norm() == 0.0);
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 4.0, 9.0, 1.0;
    Matrix expected = Matrix::Zero(3, 3);
    expected.diagonal() << 2.0, 3.0, 1.0;
    CHECK((cholesky(s, d).matrix() - expected).norm() <= 1e-14);
}

TEST_CASE("cholesky round trip and simple transitivity") {
    Rng rng(83);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int trial = 0; trial < 25; ++trial) {
            auto t0 = random_triangular(s, rng);
            auto rec = cholesky(s, t0.matrix() * t0.matrix().transpose());
            CHECK((rec.matrix() - t0.matrix()).cwiseAbs().maxCoeff() <= 1e-10);

            Matrix x = random_cone_point(s, rng);
            CHECK((action(cholesky(s, x), id) - x).norm() <= 1e-10 * x.norm());
        }
    }
}

TEST_CASE("cholesky error cases") {
    auto s = preset("vinberg");
    Matrix off = Matrix::Identity(3, 3);
    off(0, 1) = off(1, 0) = 0.3;  // outside Z_V
    CHECK_THROWS_AS(cholesky(s, off), NotInSpace);
    Matrix sig = Matrix::Identity(3, 3);
    sig(2, 2) = -2.0;
    CHECK_THROWS_AS(cholesky(s, sig), NotPositiveDefinite);
}

TEST_CASE("hat completion on the vinberg structure fills in m31 m32 / m33") {
    auto s = preset("vinberg");
    Rng rng(89);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_dual_point(s, rng);
        Matrix hat = hat_completion(s, m);
        CHECK(std::abs(hat(0, 1) - m(2, 0) * m(2, 1) / m(2, 2)) <= 1e-10);
        Matrix rest = hat - m;
        rest(0, 1) = rest(1, 0) = 0.0;
        CHECK(rest.norm() <= 1e-10);
    }
    Matrix id = Matrix::Identity(3, 3);
    CHECK((hat_completion(s, id) - id).norm() <= 1e-13);
}

TEST_CASE("hat completion: consistency with the triangular generation") {
    Rng rng(97);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        for (int trial = 0; trial < 34; ++trial) {
            auto t = random_triangular(s, rng);
            Matrix xi = dual_action(t, id);
            Matrix hat = hat_completion(s, xi);
            Matrix expected = t.matrix().transpose() * t.matrix();
            CHECK(relative_error(hat, expected) <= 1e-9);
            CHECK((s.project(hat) - xi).norm() <= 1e-9);
            CHECK(s.in_space(hat.inverse(), 1e-9));
        }
    }
    auto s = preset("vinberg");
    CHECK_THROWS_AS(hat_completion(s, -Matrix::Identity(3, 3)), NotInDualCone);
}

TEST_CASE("dual decomposition is the inverse of the dual action at the identity") {
    Rng rng(101);
    for (const char* name : kStructures) {
        auto s = preset(name);
        Matrix id = Matrix::Identity(s.size(), s.size());
        CHECK((dual_decompose(s, id).matrix() - id).norm() <= 1e-13);
        for (int trial = 0; trial < 25; ++trial) {
            auto t0 = random_triangular(s, rng);
            auto rec = dual_decompose(s, dual_action(t0, id));
            CHECK((rec.matrix() - t0.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("reversed coordinates reproduce the projected-product example") {
    // The 3x3 algebra with (2,3) = (3,2) = 0 is the vinberg pattern with
    // the order of rows and columns reversed; ell = rho(W) with W the flip.
    auto s = preset("vinberg");
    Matrix w = Matrix::Zero(3, 3);
    w(0, 2) = w(1, 1) = w(2, 0) = 1.0;

    Matrix t_flip(3, 3);  // unit diagonal, first column (1,1,1), in flipped coords
    t_flip << 1, 0, 0, 1, 1, 0, 1, 0, 1;
    Matrix t_vin = w * t_flip.transpose() * w;
    auto t = TriangularFactor::from_matrix(s, t_vin);

    // theta = T^T T in flipped coordinates = ell(T_vin T_vin^T)
    Matrix theta_flip(3, 3);
    theta_flip << 3, 1, 1, 1, 1, 0, 1, 0, 1;
    Matrix x = action(t, Matrix::Identity(3, 3));
    CHECK((w * x * w - theta_flip).norm() <= 1e-13);

    // m0 = the projected inverse pair; its vinberg image decomposes to T^{-1}
    Matrix m0(3, 3);
    m0 << 1, -1, -1, -1, 2, 0, -1, 0, 2;
    Matrix xi = w * m0 * w;
    CHECK(in_dual_cone(s, xi));
    auto rec = dual_decompose(s, xi);
    CHECK((rec.matrix() - t.inverse().matrix()).norm() <= 1e-12);
}

TEST_CASE("zero-padded leading inverses against the triangular identity") {
    // for y = T^T T:  T^T J_k^* T = y - [(y^{-1})_{1:k}]^{-1}_0
    Rng rng(103);
    for (const char* name : kStructures) {
        auto s = preset(name);
        for (int trial = 0; trial < 20; ++trial) {
            auto t = random_triangular(s, rng);
            Matrix y = t.matrix().transpose() * t.matrix();
            Matrix yinv = y.inverse();
            for (int k = 0; k + 1 < s.rank(); ++k) {
                const int nk = s.boundary(k);
                Matrix jstar = Matrix::Identity(s.size(), s.size());
                jstar.topLeftCorner(nk, nk).setZero();
                Matrix lhs = t.matrix().transpose() * jstar * t.matrix();
                Matrix padded = Matrix::Zero(s.size(), s.size());
                padded.topLeftCorner(nk, nk) = yinv.topLeftCorner(nk, nk).inverse();
                CHECK(relative_error(lhs, y - padded) <= 1e-10);
            }
        }
    }
}
