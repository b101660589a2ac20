#include "alp/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "alp/errors.hpp"

namespace alp {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void check_hermitian(const StructuredMatrix& A) {
    if (A.has_toeplitz() && (A.b - A.a.conjugate()).norm() > 1e-10 * (1.0 + A.a.norm()))
        throw NonHermitianInput("Toeplitz part");
    if (A.has_hankel()) {
        // a Hankel matrix is complex symmetric; Hermitian needs real entries
        if (A.u.imag().norm() + A.v.imag().norm() > 1e-10 * (1.0 + A.u.norm() + A.v.norm()))
            throw NonHermitianInput("Hankel part");
    }
}

}  // namespace

Vec apply_inverse(const AlgebraPlusLowRank& pr, const Vec& y) {
    const int n = pr.n();
    if (y.size() != n) throw DimensionMismatch("apply_inverse");
    Vec rhs = pr.left_J ? Vec(y.reverse()) : y;
    double dscale = pr.d.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
        if (std::abs(pr.d[i]) < 1e-14 * std::max(1.0, dscale)) throw SingularDiagonal();
    Vec z = transform_apply(pr.algebra, rhs, true);
    Vec w = z.array() / pr.d.array();
    const int r = pr.skeleton_in_preconditioner ? static_cast<int>(pr.G.cols()) : 0;
    if (r > 0) {
        Mat DG = pr.G;
        for (int t = 0; t < r; ++t) DG.col(t) = pr.G.col(t).array() / pr.d.array();
        Mat cap = Mat::Identity(r, r) + pr.H.adjoint() * DG;
        Eigen::FullPivLU<Mat> lu(cap);
        if (!lu.isInvertible()) throw SingularCapacitance();
        w -= DG * lu.solve(pr.H.adjoint() * w);
    }
    return transform_apply(pr.algebra, w, false);
}

SolveReport pcg(const StructuredMatrix& A, const AlgebraPlusLowRank* pr, const Vec& b,
                double tol, int maxit) {
    check_hermitian(A);
    const int n = A.n;
    if (b.size() != n) throw DimensionMismatch("pcg rhs");
    SolveReport rep;
    double t0 = now_seconds();
    double bnorm = b.norm();
    if (bnorm == 0.0) {
        rep.converged = true;
        return rep;
    }
    Vec x = Vec::Zero(n);
    Vec r = b;
    Vec z = pr ? apply_inverse(*pr, r) : r;
    Vec p = z;
    cxd rz = r.dot(z);
    for (int it = 0; it < maxit; ++it) {
        Vec Ap = matvec(A, p);
        cxd alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        double rel = r.norm() / bnorm;
        rep.residual_history.push_back(rel);
        rep.iterations = it + 1;
        if (rel <= tol) {
            rep.converged = true;
            break;
        }
        z = pr ? apply_inverse(*pr, r) : r;
        cxd rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    rep.wall_time = now_seconds() - t0;
    return rep;
}

SolveReport gmres(const StructuredMatrix& A, const AlgebraPlusLowRank* pr, const Vec& b,
                  double tol, int maxit, int restart) {
    const int n = A.n;
    if (b.size() != n) throw DimensionMismatch("gmres rhs");
    if (restart <= 0) restart = 50;
    SolveReport rep;
    double t0 = now_seconds();
    auto prec = [&](const Vec& v) { return pr ? apply_inverse(*pr, v) : v; };
    Vec pb = prec(b);
    double pbnorm = pb.norm();
    if (pbnorm == 0.0) {
        rep.converged = true;
        return rep;
    }
    Vec x = Vec::Zero(n);
    int total = 0;
    while (total < maxit && !rep.converged) {
        Vec r = prec(b - matvec(A, x));
        double beta = r.norm();
        if (beta / pbnorm <= tol) {
            rep.converged = true;
            break;
        }
        const int m = std::min(restart, maxit - total);
        std::vector<Vec> V;
        V.push_back(r / beta);
        Mat H = Mat::Zero(m + 1, m);
        Vec g = Vec::Zero(m + 1);
        g[0] = beta;
        std::vector<cxd> cs(m), sn(m);
        int k = 0;
        for (; k < m; ++k) {
            Vec w = prec(matvec(A, V[k]));
            for (int i = 0; i <= k; ++i) {
                H(i, k) = V[i].dot(w);
                w -= H(i, k) * V[i];
            }
            H(k + 1, k) = w.norm();
            if (std::abs(H(k + 1, k)) > 1e-300) V.push_back(w / H(k + 1, k));
            // Givens update of column k
            for (int i = 0; i < k; ++i) {
                cxd t = std::conj(cs[i]) * H(i, k) + std::conj(sn[i]) * H(i + 1, k);
                H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
                H(i, k) = t;
            }
            double denom = std::sqrt(std::norm(H(k, k)) + std::norm(H(k + 1, k)));
            if (denom > 0) {
                cs[k] = H(k, k) / denom;
                sn[k] = H(k + 1, k) / denom;
            } else {
                cs[k] = 1.0;
                sn[k] = 0.0;
            }
            H(k, k) = std::conj(cs[k]) * H(k, k) + std::conj(sn[k]) * H(k + 1, k);
            H(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = std::conj(cs[k]) * g[k];
            ++total;
            double rel = std::abs(g[k + 1]) / pbnorm;
            rep.residual_history.push_back(rel);
            rep.iterations = total;
            if (rel <= tol) {
                ++k;
                rep.converged = true;
                break;
            }
            if (static_cast<int>(V.size()) <= k + 1) {
                ++k;
                break;  // happy breakdown
            }
        }
        // back substitution on the k x k triangle
        Vec y = Vec::Zero(k);
        for (int i = k - 1; i >= 0; --i) {
            cxd s = g[i];
            for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
            y[i] = s / H(i, i);
        }
        for (int i = 0; i < k; ++i) x += y[i] * V[i];
    }
    if (!rep.converged) {
        Vec r = prec(b - matvec(A, x));
        rep.converged = r.norm() / pbnorm <= tol;
    }
    rep.wall_time = now_seconds() - t0;
    return rep;
}

ClusterReport cluster_report(const StructuredMatrix& A, const AlgebraPlusLowRank& pr,
                             double eps, int dense_cap) {
    const int n = A.n;
    if (n > dense_cap) throw DenseCapExceeded();
    Mat M(n, n);
    Vec e = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        M.col(j) = apply_inverse(pr, matvec(A, e));
        e[j] = 0.0;
    }
    Eigen::ComplexEigenSolver<Mat> es(M, false);
    ClusterReport rep;
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        cxd lam = es.eigenvalues()[i];
        if (std::abs(lam - cxd(1.0)) > eps) ++rep.outliers;
        lo = std::min(lo, std::abs(lam));
        hi = std::max(hi, std::abs(lam));
    }
    rep.condition_estimate = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace alp
