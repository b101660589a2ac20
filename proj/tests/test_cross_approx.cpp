#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alp/cross_approx.hpp"
#include "alp/errors.hpp"

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

double offdiag_err(const Skeleton& sk, const Mat& Ah) {
    Mat R = sk.G * sk.H.adjoint();
    double worst = 0;
    for (int i = 0; i < Ah.rows(); ++i)
        for (int j = 0; j < Ah.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(R(i, j) - Ah(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("cross approximation recovers the transformed kms off-diagonal") {
    for (int n : {16, 32}) {
        StructuredMatrix K = kms(n, 0.5);
        AlgebraId id = AlgebraId::circulant(cxd(1, 0));
        EntryOracle o = build(K, id);
        Skeleton sk = cross_approximate(o, 1e-8, 10);
        CHECK(sk.rank() <= 3);
        CHECK(!sk.budget_exhausted);
        CHECK(sk.queries > 0);
        // pivot search touches O(n r^2) entries, not O(n^2)
        CHECK(sk.queries <= 8L * n * (sk.rank() + 1) * (sk.rank() + 1));
        const Mat& U = transform_matrix(id, n);
        Mat Ah = U.adjoint() * dense(K) * U;
        CHECK(offdiag_err(sk, Ah) < 1e-6);
    }
}

TEST_CASE("complex rotation: kms stays rank two in the rotated basis") {
    int n = 24;
    StructuredMatrix K = kms(n, 0.6);
    AlgebraId id = AlgebraId::circulant(cxd(0.6, 0.8));
    EntryOracle o = build(K, id);
    Skeleton sk = cross_approximate(o, 1e-10, 16);
    CHECK(sk.rank() <= 3);
    const Mat& U = transform_matrix(id, n);
    Mat Ah = U.adjoint() * dense(K) * U;
    CHECK(offdiag_err(sk, Ah) < 1e-7);
}

TEST_CASE("rank budget exhaustion is reported, not hidden") {
    int n = 32;
    StructuredMatrix K = kms(n, 0.95);
    EntryOracle o = build(K, AlgebraId::circulant(cxd(1, 0)));
    Skeleton sk = cross_approximate(o, 1e-14, 1);
    CHECK(sk.budget_exhausted);
    CHECK(sk.rank() <= 1);
}

TEST_CASE("assemble produces the matrix back in both diagonal modes") {
    int n = 16;
    StructuredMatrix K = kms(n, 0.5);
    AlgebraId id = AlgebraId::circulant(cxd(1, 0));
    EntryOracle o = build(K, id);
    Skeleton sk = cross_approximate(o, 1e-8, 10);

    AlgebraPlusLowRank pr = assemble(K, o, sk);
    CHECK(pr.skeleton_in_preconditioner);
    CHECK((dense_precond(pr, true) - dense(K)).norm() < 1e-6);

    AlgebraPlusLowRank z = assemble(K, o, sk, DiagMode::ZeroRDiag);
    // here d is the transformed diagonal itself; the skeleton diagonal is noise
    CHECK((z.d - transformed_toeplitz_diag(K, cxd(1, 0))).norm() < 1e-9);
    Mat E = transform_matrix(pr.algebra, n).adjoint() *
            (dense_precond(z, true) - dense(K)) * transform_matrix(pr.algebra, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) CHECK(std::abs(E(i, j)) < 1e-6);
}

TEST_CASE("preconditioner json round trip") {
    int n = 16;
    StructuredMatrix K = kms(n, 0.5);
    EntryOracle o = build(K, AlgebraId::circulant(cxd(1, 0)));
    Skeleton sk = cross_approximate(o, 1e-8, 10);
    AlgebraPlusLowRank pr = assemble(K, o, sk);
    AlgebraPlusLowRank rt = precond_from_json(precond_to_json(pr));
    CHECK(rt.achieved_rank == pr.achieved_rank);
    CHECK(rt.left_J == pr.left_J);
    CHECK(rt.skeleton_in_preconditioner == pr.skeleton_in_preconditioner);
    CHECK((dense_precond(rt, true) - dense_precond(pr, true)).norm() < 1e-9);
    CHECK_THROWS(precond_from_json("{}"));
}

TEST_CASE("positivity repair lifts small diagonal values") {
    int n = 16;
    StructuredMatrix K = kms(n, 0.5);
    EntryOracle o = build(K, AlgebraId::circulant(cxd(1, 0)));
    Skeleton sk = cross_approximate(o, 1e-8, 10);
    AlgebraPlusLowRank pr = assemble(K, o, sk);
    pr.d[3] = cxd(-2.0, 0.0);  // force one bad eigenvalue
    AlgebraPlusLowRank rep = positivity_repair(pr, 1e-8);
    CHECK(rep.corrections >= 1);
    for (int i = 0; i < n; ++i) CHECK(rep.d[i].real() >= 1e-8 * 0.99);
    // untouched entries stay put
    CHECK(std::abs(rep.d[1] - pr.d[1]) < 1e-15);
}
