#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alp/errors.hpp"
#include "alp/structured.hpp"

using namespace alp;

namespace {

std::mt19937_64 rng(42);

Vec randv(int n, bool cx = true) {
    std::uniform_real_distribution<double> d(-1, 1);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = cx ? cxd(d(rng), d(rng)) : cxd(d(rng), 0.0);
    return x;
}

}  // namespace

TEST_CASE("constructors enforce corner and dimension rules") {
    Vec a = randv(6), b = randv(6);
    CHECK_THROWS_AS(toeplitz(a, b), CornerMismatch);
    b[0] = a[0];
    CHECK_NOTHROW(toeplitz(a, b));
    CHECK_THROWS_AS(toeplitz(a, randv(5)), DimensionMismatch);
    Vec u = randv(6), v = randv(6);
    CHECK_THROWS_AS(hankel(u, v), CornerMismatch);
    v[0] = u[5];
    CHECK_NOTHROW(hankel(u, v));
    StructuredMatrix T = toeplitz(a, b), H = hankel(u, v);
    CHECK_THROWS_AS(add(H, T), StructureViolation);
    CHECK_NOTHROW(add(T, H));
}

TEST_CASE("entry conventions") {
    int n = 7;
    Vec a = randv(n), b = randv(n);
    b[0] = a[0];
    StructuredMatrix T = toeplitz(a, b);
    CHECK(T.entry(4, 1) == a[3]);
    CHECK(T.entry(1, 4) == b[3]);
    Vec u = randv(n), v = randv(n);
    v[0] = u[n - 1];
    StructuredMatrix H = hankel(u, v);
    CHECK(H.entry(1, 2) == u[3]);
    CHECK(H.entry(n - 1, 2) == v[2]);
    StructuredMatrix K = kms(n, 0.5);
    CHECK(std::abs(K.entry(2, 5) - std::pow(0.5, 3)) < 1e-15);
    CHECK(std::abs(K.entry(5, 2) - std::pow(0.5, 3)) < 1e-15);
    StructuredMatrix Z = z_matrix(n, 0.5);
    CHECK(std::abs(Z.entry(5, 2) - std::pow(0.5, 3)) < 1e-15);
    CHECK(std::abs(Z.entry(2, 5)) == 0.0);
}

TEST_CASE("fft matvec agrees with dense for odd and even sizes") {
    for (int n : {3, 4, 9, 16, 31}) {
        Vec a = randv(n), b = randv(n);
        b[0] = a[0];
        Vec u = randv(n), v = randv(n);
        v[0] = u[n - 1];
        StructuredMatrix T = toeplitz(a, b), H = hankel(u, v), S = add(T, H);
        Vec x = randv(n);
        CHECK((matvec(T, x) - dense(T) * x).norm() < 1e-11);
        CHECK((matvec(H, x) - dense(H) * x).norm() < 1e-11);
        CHECK((matvec(S, x) - dense(S) * x).norm() < 1e-11);
    }
}

TEST_CASE("dense cap") {
    StructuredMatrix K = kms(32, 0.5);
    CHECK_THROWS_AS(dense(K, 16), DenseCapExceeded);
}

TEST_CASE("symbol variants") {
    int n = 10;
    SUBCASE("kms kappa") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::KmsKappa;
        s.lambda = 0.5;
        CHECK((dense(toeplitz_from_symbol(s, n)) - dense(kms(n, 0.5))).norm() < 1e-13);
    }
    SUBCASE("zeta is lower triangular") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::ZetaLambda;
        s.lambda = 0.3;
        Mat Z = dense(toeplitz_from_symbol(s, n));
        CHECK((Z - dense(z_matrix(n, 0.3))).norm() < 1e-13);
    }
    SUBCASE("power alpha: zero diagonal, |k|^-alpha off it") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::PowerAlpha;
        s.alpha = 2.0;
        Mat P = dense(toeplitz_from_symbol(s, n));
        CHECK(std::abs(P(3, 3)) == 0.0);
        CHECK(std::abs(P(5, 2) - std::pow(3.0, -2.0)) < 1e-14);
        CHECK(std::abs(P(2, 5) - std::pow(3.0, -2.0)) < 1e-14);
    }
    SUBCASE("log singularity: strict lower 1/(k z0^k)") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::LogSingularity;
        s.z0 = cxd(0.0, 1.0);
        Mat L = dense(toeplitz_from_symbol(s, n));
        CHECK(std::abs(L(1, 3)) == 0.0);
        CHECK(std::abs(L(4, 1) - 1.0 / (3.0 * std::pow(cxd(0, 1), 3))) < 1e-14);
    }
    SUBCASE("rational partial fractions") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::RationalPQ;
        s.p_coeffs = {cxd(1, 0)};
        s.q_roots = {cxd(2, 0)};
        // 1/(z-2) = -sum (1/2)^{k+1} z^k, lower triangular expansion
        Mat R = dense(toeplitz_from_symbol(s, n));
        CHECK(std::abs(R(4, 1) + std::pow(0.5, 4)) < 1e-13);
        CHECK(std::abs(R(1, 4)) == 0.0);
        s.q_roots = {cxd(2, 0), cxd(2, 0)};
        CHECK_THROWS_AS(toeplitz_from_symbol(s, n), DuplicateRoots);
        s.q_roots = {cxd(2, 0)};
        s.p_coeffs = {cxd(1, 0), cxd(1, 0)};
        CHECK_THROWS_AS(toeplitz_from_symbol(s, n), DegreeViolation);
    }
    SUBCASE("fourier quadrature reproduces the kms symbol") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::FourierCoefficients;
        double lam = 0.5;
        s.f = [lam](double th) {
            return cxd((1 - lam * lam) / (1 - 2 * lam * std::cos(th) + lam * lam), 0.0);
        };
        CHECK((dense(toeplitz_from_symbol(s, n, 40 * n)) - dense(kms(n, lam))).norm() < 1e-8);
        CHECK_THROWS_AS(toeplitz_from_symbol(s, n, 2 * n), QuadratureUnderResolved);
    }
    SUBCASE("fourier explicit coefficient list") {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::FourierCoefficients;
        s.coeffs.assign(2 * n - 1, cxd(0, 0));
        s.coeffs[n - 1 + 2] = 1.0;  // t_2
        Mat T = dense(toeplitz_from_symbol(s, n));
        CHECK(std::abs(T(5, 3) - 1.0) < 1e-15);
        CHECK(std::abs(T(3, 5)) == 0.0);
        s.coeffs.pop_back();
        CHECK_THROWS_AS(toeplitz_from_symbol(s, n), DimensionMismatch);
    }
}

TEST_CASE("hankel finite section: H_ij = t_{i+j}, zero below the antidiagonal") {
    int n = 8;
    SymbolSpec s;
    s.variant = SymbolSpec::Variant::ZetaLambda;
    s.lambda = 0.5;
    Mat H = dense(hankel_from_symbol(s, n));
    CHECK(std::abs(H(2, 3) - std::pow(0.5, 5)) < 1e-14);
    CHECK(std::abs(H(n - 1, n - 1)) == 0.0);
    // exact identity against mu^{n-1} J Z_n(1/mu)
    double mu = 0.5;
    Mat Z = dense(z_matrix(n, 1.0 / mu));
    Mat J = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
    CHECK((H - std::pow(mu, n - 1) * J * Z).norm() < 1e-12);
}

TEST_CASE("json round trip") {
    int n = 6;
    Vec a = randv(n), b = randv(n);
    b[0] = a[0];
    Vec u = randv(n), v = randv(n);
    v[0] = u[n - 1];
    for (const StructuredMatrix& A :
         {toeplitz(a, b), hankel(u, v), add(toeplitz(a, b), hankel(u, v))}) {
        StructuredMatrix B = matrix_from_json(to_json(A));
        CHECK(B.kind == A.kind);
        CHECK((dense(B) - dense(A)).norm() < 1e-14);
    }
    CHECK_THROWS_AS(matrix_from_json("{\"kind\":\"nope\"}"), ConfigError);
}
