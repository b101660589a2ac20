#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <random>

#include "alp/errors.hpp"
#include "alp/splittings.hpp"

using namespace alp;

namespace {

Mat dense_precond(const AlgebraPlusLowRank& p, bool with_R) {
    const int n = p.n();
    const Mat& U = transform_matrix(p.algebra, n);
    Mat M = U * p.d.asDiagonal() * U.adjoint();
    if (with_R && p.G.cols() > 0) M += U * (p.G * p.H.adjoint()) * U.adjoint();
    if (p.left_J) M = M.colwise().reverse().eval();
    return M;
}

int num_rank(const Mat& M, double tol = 1e-10) {
    Eigen::JacobiSVD<Mat> svd(M);
    double s0 = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > tol * std::max(1.0, s0)) ++r;
    return r;
}

}  // namespace

TEST_CASE("triangular geometric splitting: rank one, exact") {
    for (int n : {8, 16, 33}) {
        for (double lam : {0.0, 0.3, 0.9}) {
            for (cxd phi : {cxd(1, 0), cxd(-1, 0), cxd(0.6, 0.8)}) {
                INFO("n=", n, " lam=", lam);
                AlgebraPlusLowRank z = precond_Z(n, lam, phi);
                CHECK(!z.skeleton_in_preconditioner);
                CHECK(z.achieved_rank == (lam == 0.0 ? 0 : 1));
                Mat Zd = dense(z_matrix(n, lam));
                CHECK((dense_precond(z, true) - Zd).norm() < 1e-8);
            }
        }
    }
    CHECK_THROWS_AS(precond_Z(8, 1.0, cxd(1, 0)), PoleAtPhi);
}

TEST_CASE("symmetric geometric splitting: rank two, complex rotations included") {
    for (int n : {8, 16, 33}) {
        for (double lam : {0.3, 0.5, 0.9}) {
            for (cxd phi : {cxd(1, 0), cxd(-1, 0), cxd(0.6, 0.8)}) {
                INFO("n=", n, " lam=", lam);
                AlgebraPlusLowRank q = precond_KMS(n, lam, phi);
                CHECK(q.achieved_rank == 2);
                Mat Kd = dense(kms(n, lam));
                CHECK((dense_precond(q, true) - Kd).norm() < 1e-8);
                CHECK(num_rank(Kd - dense_precond(q, false)) == 2);
            }
        }
    }
    CHECK_THROWS_AS(precond_KMS(8, 1.0, cxd(1, 0)), PoleAtPhi);
}

TEST_CASE("rank two is the floor for the symmetric geometric family") {
    // alternating least squares: algebra part + one dyad cannot reach the
    // matrix, while the constructed rank-two splitting is exact
    int n = 12;
    double lam = 0.5;
    Mat K = dense(kms(n, lam));
    AlgebraId id = AlgebraId::circulant(cxd(1, 0));
    const Mat& U = transform_matrix(id, n);
    Mat Kh = U.adjoint() * K * U;
    Mat R = Mat::Zero(n, n);
    double resid = 1.0;
    for (int it = 0; it < 300; ++it) {
        Vec d = (Kh - R).diagonal();
        Mat E = Kh - Mat(d.asDiagonal());
        Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
        R = svd.singularValues()[0] * svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
        resid = (Kh - Mat(d.asDiagonal()) - R).norm() / K.norm();
    }
    CHECK(resid > 1e-3);
    AlgebraPlusLowRank q = precond_KMS(n, lam, cxd(1, 0));
    CHECK((dense_precond(q, true) - K).norm() / K.norm() < 1e-12);
}

TEST_CASE("rational symbols split with one pole term each") {
    std::vector<cxd> p = {cxd(1, 0), cxd(0.3, 0.1)};
    std::vector<cxd> q = {cxd(2.0, 0.3), cxd(-1.7, 0.4)};
    for (int n : {8, 16, 33}) {
        AlgebraPlusLowRank pr = precond_rational(p, q, n, cxd(1, 0));
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::RationalPQ;
        s.p_coeffs = p;
        s.q_roots = q;
        Mat Td = dense(toeplitz_from_symbol(s, n));
        CHECK((dense_precond(pr, true) - Td).norm() < 1e-8);
        CHECK(pr.achieved_rank <= static_cast<int>(q.size()));
        CHECK(num_rank(Td - dense_precond(pr, false)) <= static_cast<int>(p.size()));
    }
    // residue list supplied by the caller bypasses the partial fraction solve
    std::vector<cxd> rho;
    for (size_t i = 0; i < q.size(); ++i) {
        cxd num = p[0] + p[1] * q[i], den = 1.0;
        for (size_t j = 0; j < q.size(); ++j)
            if (j != i) den *= q[i] - q[j];
        rho.push_back(num / den);
    }
    AlgebraPlusLowRank a = precond_rational(p, q, 16, cxd(1, 0));
    AlgebraPlusLowRank b = precond_rational(p, q, 16, cxd(1, 0), &rho);
    CHECK((dense_precond(a, true) - dense_precond(b, true)).norm() < 1e-9);
    // guards
    CHECK_THROWS_AS(precond_rational(p, {cxd(2, 0), cxd(2, 0)}, 8, cxd(1, 0)), DuplicateRoots);
    CHECK_THROWS_AS(precond_rational({cxd(1, 0), cxd(1, 0), cxd(1, 0)}, q, 8, cxd(1, 0)),
                    DegreeViolation);
}

TEST_CASE("polynomial lower-triangular splitting") {
    for (int n : {8, 16, 33}) {
        for (int p : {0, 1, 2}) {
            for (cxd phi : {cxd(1, 0), cxd(-1, 0)}) {
                INFO("n=", n, " p=", p);
                AlgebraPlusLowRank pr = precond_power(n, p, phi, false);
                Mat Td = Mat::Zero(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        Td(i, j) =
                            i > j ? std::pow(double(i - j), p) : (i == j && p == 0 ? 1.0 : 0.0);
                CHECK((dense_precond(pr, true) - Td).norm() < 1e-7);
                CHECK(num_rank(Td - dense_precond(pr, false), 1e-8) <= p + 2);
                AlgebraPlusLowRank sr = precond_power(n, p, phi, true);
                Mat Ts = Td + Td.transpose();
                if (p == 0) Ts -= Mat::Identity(n, n);
                CHECK((dense_precond(sr, true) - Ts).norm() < 1e-7);
                CHECK(num_rank(Ts - dense_precond(sr, false), 1e-8) <= 2 * (p + 2));
            }
        }
    }
}

TEST_CASE("exponential sum fit meets its tolerance") {
    for (double alpha : {1.0, 2.0}) {
        for (double eps : {0.5, 1e-3, 1e-6}) {
            ExpSumFit f = exp_sum_fit(alpha, 1024, eps);
            INFO("alpha=", alpha, " eps=", eps, " rho=", f.rho());
            CHECK(f.achieved_relative_error <= eps);
            CHECK(f.rho() >= 1);
            // terms really reproduce k^-alpha on the whole range
            double worst = 0;
            for (int k = 1; k <= 1024; ++k) {
                double s = 0;
                for (int i = 0; i < f.rho(); ++i) s += f.a[i] * std::exp(-f.b[i] * k);
                worst = std::max(worst, std::abs(s - std::pow(k, -alpha)) * std::pow(k, alpha));
            }
            CHECK(worst <= eps * 1.01);
        }
    }
    // smaller tolerance costs more terms
    CHECK(exp_sum_fit(1.0, 1024, 1e-6).rho() > exp_sum_fit(1.0, 1024, 1e-3).rho());
    CHECK_THROWS_AS(exp_sum_fit(1.0, 1024, 0.7), ConfigError);
}

TEST_CASE("logarithmic symbol: rank grows like log, error bounded") {
    SymbolSpec s;
    s.variant = SymbolSpec::Variant::LogSingularity;
    s.z0 = 1.0;
    for (int n : {16, 64}) {
        Mat Td = dense(toeplitz_from_symbol(s, n));
        double scale = Td.cwiseAbs().maxCoeff();
        for (double eps : {0.5, 1e-5}) {
            AlgebraPlusLowRank pr = precond_log(n, cxd(1, 0), cxd(-1, 0), eps);
            double rel = (dense_precond(pr, true) - Td).cwiseAbs().maxCoeff() / scale;
            INFO("n=", n, " eps=", eps, " rank=", pr.achieved_rank, " rel=", rel);
            CHECK(rel <= eps * 1.5);
        }
        CHECK(precond_log(n, cxd(1, 0), cxd(-1, 0), 1e-7).achieved_rank >
              precond_log(n, cxd(1, 0), cxd(-1, 0), 1e-2).achieved_rank);
    }
    // the singular point must not collide with the algebra pole
    CHECK_THROWS_AS(precond_log(8, cxd(1, 0), cxd(1, 0), 1e-5), PoleAtPhi);
}

TEST_CASE("generalized geometric sums") {
    int n = 16;
    cxd phi(1, 0);
    std::vector<GenKmsTerm> terms;
    terms.push_back({1.0, {0.0, 1.0}, 0.6});
    terms.push_back({-0.5, {1.0}, 0.3});
    AlgebraPlusLowRank pr = precond_generalized_kms(terms, n, phi, 1e-8);
    Mat Gd = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = std::abs(i - j);
            Gd(i, j) += 1.0 * double(k) * std::pow(0.6, k) - 0.5 * std::pow(0.3, k);
        }
    CHECK((dense_precond(pr, true) - Gd).norm() < 1e-7);
    // one constant term degenerates to the plain symmetric geometric case
    AlgebraPlusLowRank a1 = precond_generalized_kms({{1.0, {1.0}, 0.5}}, n, phi, 1e-8);
    CHECK((dense_precond(a1, true) - dense(kms(n, 0.5))).norm() < 1e-8);
    AlgebraPlusLowRank a0 = precond_generalized_kms({{0.0, {1.0}, 0.5}}, n, phi, 1e-8);
    CHECK(dense_precond(a0, true).norm() < 1e-12);
}

TEST_CASE("hankel splittings carry the exchange on the left") {
    for (int n : {8, 16}) {
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::ZetaLambda;
        s.lambda = 0.5;
        AlgebraPlusLowRank pr = precond_hankel(s, n, cxd(1, 0), 1e-8);
        CHECK(pr.left_J);
        CHECK((dense_precond(pr, true) - dense(hankel_from_symbol(s, n))).norm() < 1e-8);

        SymbolSpec k;
        k.variant = SymbolSpec::Variant::KmsKappa;
        k.lambda = 0.5;
        AlgebraPlusLowRank pk = precond_hankel(k, n, cxd(1, 0), 1e-8);
        CHECK((dense_precond(pk, true) - dense(hankel_from_symbol(k, n))).norm() < 1e-8);

        SymbolSpec r;
        r.variant = SymbolSpec::Variant::RationalPQ;
        r.p_coeffs = {cxd(1, 0)};
        r.q_roots = {cxd(2.0, 0.0), cxd(-3.0, 0.5)};
        AlgebraPlusLowRank hr = precond_hankel(r, n, cxd(1, 0), 1e-8);
        Mat Hr = dense(hankel_from_symbol(r, n));
        CHECK((dense_precond(hr, true) - Hr).norm() < 1e-7);
        CHECK(hr.kronecker_warning);
        // the finite section is numerically low rank up to the truncation tail
        CHECK(num_rank(Hr, 1e-3) <= static_cast<int>(r.q_roots.size()));
    }
    SUBCASE("degenerate lambda zero: single antidiagonal corner") {
        int n = 8;
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::ZetaLambda;
        s.lambda = 0.0;
        AlgebraPlusLowRank pr = precond_hankel(s, n, cxd(1, 0), 1e-8);
        CHECK((dense_precond(pr, true) - dense(hankel_from_symbol(s, n))).norm() < 1e-10);
    }
    SUBCASE("coefficient lists only when the folded matrix is in the algebra") {
        int n = 8;
        SymbolSpec s;
        s.variant = SymbolSpec::Variant::FourierCoefficients;
        // H = J: h_k = 1 at k = n-1, so JH = I is phi-circulant for phi = 1
        s.coeffs.assign(2 * n - 1, cxd(0, 0));
        s.coeffs[n - 1 + (n - 1)] = 1.0;
        AlgebraPlusLowRank pj = precond_hankel(s, n, cxd(1, 0), 1e-8);
        Mat J = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
        CHECK((dense_precond(pj, true) - J).norm() < 1e-10);
        // a generic coefficient list does not fold into the algebra
        SymbolSpec g = s;
        g.coeffs[n - 1 + 1] = 0.7;
        CHECK_THROWS_AS(precond_hankel(g, n, cxd(1, 0), 1e-8), UnsupportedCombination);
    }
}

TEST_CASE("symmetric geometric splitting in the cyclic real algebras") {
    for (int k : {1, 2}) {
        int n = 8;
        AlgebraPlusLowRank pr = precond_hartley_kms(n, 0.5, k);
        Mat Kd = dense(kms(n, 0.5));
        CHECK((dense_precond(pr, true) - Kd).norm() < 1e-8);
        Mat P = dense_precond(pr, false);
        CHECK((P - P.transpose()).norm() < 1e-9);
        CHECK(num_rank(Kd - P) == 2);
    }
}
