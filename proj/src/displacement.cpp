#include "alp/displacement.hpp"

#include "alp/errors.hpp"

namespace alp {

namespace {

Vec e_k(int n, int k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    return e;
}

Vec flip(const Vec& x) { return x.reverse(); }

// cyclic up-shift with corner phi: (Px)_i = x_{i+1}, (Px)_{n-1} = phi x_0
Vec pi_apply(const Vec& x, cxd phi) {
    const int n = static_cast<int>(x.size());
    Vec y(n);
    y.head(n - 1) = x.tail(n - 1);
    y[n - 1] = phi * x[0];
    return y;
}

void check_corner(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.size() == 0) throw DimensionMismatch("commutator vectors");
    if (std::abs(a[0] - b[0]) > 1e-12 * (1.0 + std::abs(a[0]))) throw CornerMismatch();
}

Vec toeplitz_apply(const Vec& a, const Vec& b, const Vec& x) {
    return matvec(toeplitz(a, b), x);
}

Vec hankel_apply(const Vec& c, const Vec& d, const Vec& x) {
    return matvec(hankel(c, d), x);
}

// first-row cross-sum extension, DST1 tau element
RMat tau_from_row(const RVec& z) {
    const int m = static_cast<int>(z.size());
    RMat A = RMat::Zero(m + 2, m + 2);
    A.block(1, 1, 1, m) = z.transpose();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) A(i + 1, j) = A(i, j - 1) + A(i, j + 1) - A(i - 1, j);
    return A.block(1, 1, m, m);
}

}  // namespace

Mat DyadicSum::realize() const {
    Mat M = Mat::Zero(n, n);
    for (const auto& [x, y] : dyads) M += x * y.adjoint();  // y stores the conjugate
    return M;
}

DyadicSum comm_toeplitz_circulant(const Vec& a, const Vec& b, cxd phi) {
    check_corner(a, b);
    const int n = static_cast<int>(a.size());
    DyadicSum D;
    D.n = n;
    Vec x = phi * flip(b) - pi_apply(a, phi);
    D.add_t(x, e_k(n, 0));
    D.add_t(e_k(n, n - 1), -flip(x));
    return D;
}

DyadicSum theta(const Vec& a, const Vec& b) {
    const int n = static_cast<int>(a.size());
    DyadicSum D;
    D.n = n;
    D.add_t(e_k(n, 0), pi_apply(b, 1.0));
    D.add_t(-pi_apply(a, 1.0), e_k(n, 0));
    return D;
}

DyadicSum comm_toeplitz_X(const Vec& a, const Vec& b) {
    check_corner(a, b);
    const int n = static_cast<int>(a.size());
    DyadicSum D;
    D.n = n;
    Vec pa = pi_apply(a, 1.0), pb = pi_apply(b, 1.0);
    D.add_t(e_k(n, 0), pb);
    D.add_t(-pa, e_k(n, 0));
    D.add_t(-flip(pb), e_k(n, n - 1));
    D.add_t(e_k(n, n - 1), flip(pa));
    return D;
}

DyadicSum comm_hankel_X(const Vec& c, const Vec& d) {
    if (c.size() != d.size() || c.size() == 0) throw DimensionMismatch("commutator vectors");
    const int n = static_cast<int>(c.size());
    if (std::abs(c[n - 1] - d[0]) > 1e-12 * (1.0 + std::abs(d[0]))) throw CornerMismatch();
    DyadicSum D;
    D.n = n;
    Vec w = flip(pi_apply(flip(c), 1.0));  // J P (J c)
    Vec pd = pi_apply(d, 1.0);
    D.add_t(e_k(n, 0), w);
    D.add_t(-pd, e_k(n, n - 1));
    D.add_t(-w, e_k(n, 0));
    D.add_t(e_k(n, n - 1), pd);
    return D;
}

DyadicSum comm_toeplitz_trig(const Vec& a, const Vec& b, const TrigParams& mu) {
    check_corner(a, b);
    const int n = static_cast<int>(a.size());
    DyadicSum D;
    D.n = n;
    Vec e1 = e_k(n, 0), en = e_k(n, n - 1);
    Vec v1 = (mu.mu1 / 2.0) * e1 + (std::sqrt(mu.mu2) - 1.0) * e_k(n, 1);
    Vec v2 = (std::sqrt(mu.mu3) - 1.0) * e_k(n, n - 2) + (mu.mu4 / 2.0) * en;
    Vec pa = pi_apply(a, 1.0), pb = pi_apply(b, 1.0);
    auto T = [&](const Vec& x) { return toeplitz_apply(a, b, x); };
    auto Tt = [&](const Vec& x) { return toeplitz_apply(b, a, x); };
    D.add_t(e1, pb - Tt(v1));
    D.add_t(en, flip(pa) - Tt(v2));
    D.add_t(-pa + T(v1), e1);
    D.add_t(-flip(pb) + T(v2), en);
    D.add_t(T(e1), v1);
    D.add_t(-v1, Tt(e1));
    D.add_t(T(en), v2);
    D.add_t(-v2, Tt(en));
    return D;
}

DyadicSum comm_hankel_trig(const Vec& c, const Vec& d, const TrigParams& mu) {
    if (c.size() != d.size() || c.size() == 0) throw DimensionMismatch("commutator vectors");
    const int n = static_cast<int>(c.size());
    if (std::abs(c[n - 1] - d[0]) > 1e-12 * (1.0 + std::abs(d[0]))) throw CornerMismatch();
    DyadicSum D;
    D.n = n;
    Vec e1 = e_k(n, 0), en = e_k(n, n - 1);
    Vec v1 = (mu.mu1 / 2.0) * e1 + (std::sqrt(mu.mu2) - 1.0) * e_k(n, 1);
    Vec v2 = (std::sqrt(mu.mu3) - 1.0) * e_k(n, n - 2) + (mu.mu4 / 2.0) * en;
    Vec w = flip(pi_apply(flip(c), 1.0));  // J P (J c)
    Vec pd = pi_apply(d, 1.0);
    auto H = [&](const Vec& x) { return hankel_apply(c, d, x); };  // H symmetric
    D.add_t(e1, w - H(v1));
    D.add_t(en, pd - H(v2));
    D.add_t(-w + H(v1), e1);
    D.add_t(-pd + H(v2), en);
    D.add_t(H(e1), v1);
    D.add_t(-v1, H(e1));
    D.add_t(H(en), v2);
    D.add_t(-v2, H(en));
    return D;
}

DyadicSum comm_toeplitz_Y(const Vec& a, const Vec& b, cxd phi) {
    check_corner(a, b);
    const int n = static_cast<int>(a.size());
    DyadicSum D;
    D.n = n;
    auto xv = [&](const Vec& x, const Vec& y) -> Vec { return phi * flip(y) - pi_apply(x, phi); };
    Vec xab = xv(a, b), xba = xv(b, a);
    D.add_t(xab, e_k(n, 0));
    D.add_t(-e_k(n, 0), xba);
    D.add_t(flip(xba), e_k(n, n - 1));
    D.add_t(-e_k(n, n - 1), flip(xab));
    return D;
}

DyadicSum comm_hankel_Y(const Vec& c, const Vec& d, cxd phi) {
    if (c.size() != d.size() || c.size() == 0) throw DimensionMismatch("commutator vectors");
    const int n = static_cast<int>(c.size());
    if (std::abs(c[n - 1] - d[0]) > 1e-12 * (1.0 + std::abs(d[0]))) throw CornerMismatch();
    // H(c,d) = T(d, Jc) J and [HJ', Y] with JY = YJ reduces to [T, Y] J
    DyadicSum T = comm_toeplitz_Y(d, flip(c), phi);
    DyadicSum D;
    D.n = n;
    for (const auto& [x, y] : T.dyads) D.add(x, flip(y));
    return D;
}

DyadicSum comm_M_k(const StructuredMatrix& A, int k) {
    const int n = A.n;
    DyadicSum D;
    D.n = n;
    bool sym_toeplitz = A.kind == Kind::Toeplitz && (A.a - A.b).norm() < 1e-12 * (1.0 + A.a.norm());
    bool persym_hankel = false;
    if (A.kind == Kind::Hankel) {
        // persymmetric: the 2n-1 antidiagonal values form a palindrome
        Vec h(2 * n - 1);
        h.head(n) = A.u;
        h.tail(n - 1) = A.v.tail(n - 1);
        persym_hankel = (h - Vec(h.reverse())).norm() < 1e-12 * (1.0 + h.norm());
    }
    if (k == 5 || k == 6) {
        if (!sym_toeplitz && !persym_hankel) throw StructureViolation("M_k needs J-commuting input");
        return D;  // M_k = J commutes: zero dyads
    }
    if (k != 1 && k != 2) throw UnsupportedHartleyIndex();
    if (!sym_toeplitz) throw StructureViolation("M_k (k=1,2) path needs symmetric Toeplitz");
    const int m = n - 1;
    double s = (k == 1) ? 0.5 : -0.5;
    double sgn = (k == 1) ? -1.0 : 1.0;
    RVec z = RVec::Zero(m);
    z[1] = (k == 1) ? 0.5 : -0.5;
    z[m - 2] = -0.5;
    Mat tau = tau_from_row(z).cast<cxd>();
    Vec r = A.a.tail(m);
    Vec tr = Vec::Zero(n);
    tr.tail(m) = tau * r;
    D.add_t(e_k(n, 0), tr);
    D.add_t(-tr, e_k(n, 0));
    Vec ap = A.a.head(m);
    DyadicSum inner = comm_toeplitz_X(ap, ap);
    for (const auto& [x, yc] : inner.dyads) {
        Vec y = yc.conjugate();
        Vec y2 = s * (y + sgn * Vec(y.reverse()));
        Vec xe = Vec::Zero(n), ye = Vec::Zero(n);
        xe.tail(m) = x;
        ye.tail(m) = y2;
        D.add_t(xe, ye);
    }
    return D;
}

}  // namespace alp
