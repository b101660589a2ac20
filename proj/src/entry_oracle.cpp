#include "alp/entry_oracle.hpp"

#include <cmath>

#include "alp/errors.hpp"

namespace alp {

namespace {

constexpr double kDenomTol = 1e-12;

Ladder make_ladder(const AlgebraId& id, const DyadicSum& D, const Vec& lambda) {
    Ladder L;
    L.lambda = lambda;
    // dyads realize as x y^T; in the transformed basis that is
    // (U*x)(U*conj(y))^* and the second factor is exactly the stored vector
    for (const auto& [x, yc] : D.dyads)
        L.hat.emplace_back(transform_apply(id, x, true), transform_apply(id, yc, true));
    return L;
}

bool is_symmetric_toeplitz(const StructuredMatrix& A) {
    return A.has_toeplitz() && (A.a - A.b).norm() < 1e-12 * (1.0 + A.a.norm());
}

bool is_persymmetric_hankel(const StructuredMatrix& A) {
    if (!A.has_hankel()) return false;
    Vec h(2 * A.n - 1);
    h.head(A.n) = A.u;
    h.tail(A.n - 1) = A.v.tail(A.n - 1);
    return (h - Vec(h.reverse())).norm() < 1e-12 * (1.0 + h.norm());
}

StructuredMatrix toeplitz_of_hankel(const StructuredMatrix& H) {
    // T = JH: t_d = h[n-1-d] for d >= 0, h[n-1+s] above
    const int n = H.n;
    Vec h(2 * n - 1);
    h.head(n) = H.u;
    h.tail(n - 1) = H.v.tail(n - 1);
    Vec a(n), b(n);
    for (int t = 0; t < n; ++t) {
        a[t] = h[n - 1 - t];
        b[t] = h[n - 1 + t];
    }
    return toeplitz(a, b);
}

EntryOracle build_from_ladders(const AlgebraId& id, int n, std::vector<Ladder> ladders) {
    EntryOracle o;
    o.algebra = id;
    o.n = n;
    o.ladders = std::move(ladders);
    return o;
}

}  // namespace

// diag(F_phi* T F_phi)_k = (1/n) sum_d (n-|d|) t_d delta^{-d} omega^{-kd}
Vec transformed_toeplitz_diag(const StructuredMatrix& T, cxd phi) {
    const int n = T.n;
    cxd delta = phi_root(phi, n);
    Vec c = Vec::Zero(n);  // c_m = sum over d with [d]_n == m
    for (int d = -(n - 1); d <= n - 1; ++d) {
        cxd td = d >= 0 ? T.a[d] : T.b[-d];
        int m = ((d % n) + n) % n;
        c[m] += (double(n) - std::abs(d)) * td * std::pow(delta, -d);
    }
    // diag_k = (1/n) sum_m c_m omega^{-km} = (1/n) ifft-kernel
    return fft_backward(c) / double(n);
}

EntryOracle build(const StructuredMatrix& A, const AlgebraId& id) {
    const int n = A.n;
    switch (id.family) {
        case AlgebraId::Family::PhiCirculant: {
            if (A.kind == Kind::Toeplitz) {
                DyadicSum D = comm_toeplitz_circulant(A.a, A.b, id.phi);
                return build_from_ladders(id, n, {make_ladder(id, D, generator_eigenvalues(id, n))});
            }
            if (A.kind == Kind::Hankel) {
                if (std::abs(id.phi - cxd(1.0)) > 1e-12 && std::abs(id.phi - cxd(-1.0)) > 1e-12)
                    throw UnsupportedCombination("Hankel needs phi in {1,-1}");
                const int c = std::abs(id.phi - cxd(1.0)) < 1e-12 ? 0 : 1;
                StructuredMatrix T = toeplitz_of_hankel(A);
                EntryOracle o;
                o.algebra = id;
                o.n = n;
                o.reduced = true;
                o.inner = std::make_shared<EntryOracle>(build(T, id));
                o.inner_diag = transformed_toeplitz_diag(T, id.phi);
                o.remap.resize(n);
                o.phase.resize(n);
                cxd front = std::exp(cxd(0.0, std::arg(id.phi) * (n - 1) / n));
                for (int i = 0; i < n; ++i) {
                    o.remap[i] = ((c - i) % n + n) % n;
                    o.phase[i] = front * std::exp(cxd(0.0, -2.0 * M_PI * (((i - c) % n + n) % n) / n));
                }
                return o;
            }
            throw UnsupportedCombination("Toeplitz-plus-Hankel unsupported for circulants");
        }
        case AlgebraId::Family::Trig: {
            TrigParams mu = trig_mu(id.trig);
            DyadicSum D;
            D.n = n;
            if (A.has_toeplitz()) {
                DyadicSum Dt = comm_toeplitz_trig(A.a, A.b, mu);
                for (auto& d : Dt.dyads) D.dyads.push_back(std::move(d));
            }
            if (A.has_hankel()) {
                DyadicSum Dh = comm_hankel_trig(A.u, A.v, mu);
                for (auto& d : Dh.dyads) D.dyads.push_back(std::move(d));
            }
            return build_from_ladders(id, n, {make_ladder(id, D, generator_eigenvalues(id, n))});
        }
        case AlgebraId::Family::Hartley: {
            if (id.k == 3 || id.k == 4 || id.k == 7 || id.k == 8)
                throw UnsupportedCombination("no second generator for hartley:" + std::to_string(id.k));
            double phi = hartley_phi(id.k);
            bool has_t = A.has_toeplitz(), has_h = A.has_hankel();
            if (has_t && !is_symmetric_toeplitz(A))
                throw UnsupportedCombination("Hartley needs symmetric Toeplitz part");
            if (has_h && !is_persymmetric_hankel(A))
                throw UnsupportedCombination("Hartley needs persymmetric Hankel part");
            DyadicSum D1;
            D1.n = n;
            if (has_t) {
                DyadicSum Dt = comm_toeplitz_Y(A.a, A.b, phi);
                for (auto& d : Dt.dyads) D1.dyads.push_back(std::move(d));
            }
            if (has_h) {
                DyadicSum Dh = comm_hankel_Y(A.u, A.v, phi);
                for (auto& d : Dh.dyads) D1.dyads.push_back(std::move(d));
            }
            std::vector<Ladder> ladders{make_ladder(id, D1, generator_eigenvalues(id, n))};
            bool ladder2 = (id.k == 5 || id.k == 6) || (id.k <= 2 && !has_h);
            if (ladder2) {
                DyadicSum D2;
                D2.n = n;
                if (id.k <= 2) {
                    D2 = comm_M_k(A, id.k);
                }  // k in {5,6}: M_k = J commutes, zero dyads
                ladders.push_back(make_ladder(id, D2, secondary_eigenvalues(id, n)));
            }
            return build_from_ladders(id, n, std::move(ladders));
        }
    }
    throw UnsupportedCombination();
}

static cxd ladder_entry(const Ladder& L, int i, int j, bool& ok) {
    double scale = L.lambda.cwiseAbs().maxCoeff();
    cxd denom = L.lambda[j] - L.lambda[i];
    if (std::abs(denom) <= kDenomTol * std::max(1.0, scale)) {
        ok = false;
        return 0.0;
    }
    ok = true;
    cxd num = 0.0;
    for (const auto& [xh, yh] : L.hat) num += xh[i] * std::conj(yh[j]);
    return num / denom;
}

cxd entry(const EntryOracle& o, int i, int j) {
    if (i == j) throw DiagonalRequested();
    if (o.reduced) {
        int r = o.remap[i];
        cxd inner_val = (r == j) ? o.inner_diag[j] : entry(*o.inner, r, j);
        return o.phase[i] * inner_val;
    }
    bool ok = false;
    cxd v = ladder_entry(o.ladders[0], i, j, ok);
    if (ok) return v;
    if (o.ladders.size() > 1) {
        v = ladder_entry(o.ladders[1], i, j, ok);
        if (ok) return v;
        throw DegenerateDenominator();
    }
    throw UncomputablePosition();
}

bool computable(const EntryOracle& o, int i, int j) {
    if (i == j) return false;
    if (o.reduced) return true;
    double s0 = o.ladders[0].lambda.cwiseAbs().maxCoeff();
    if (std::abs(o.ladders[0].lambda[j] - o.ladders[0].lambda[i]) > kDenomTol * std::max(1.0, s0))
        return true;
    if (o.ladders.size() > 1) {
        double s1 = o.ladders[1].lambda.cwiseAbs().maxCoeff();
        return std::abs(o.ladders[1].lambda[j] - o.ladders[1].lambda[i]) >
               kDenomTol * std::max(1.0, s1);
    }
    return false;
}

std::vector<std::pair<int, int>> uncomputable_positions(const AlgebraId& id, int n) {
    if (id.family != AlgebraId::Family::Hartley) throw UnsupportedCombination("Hartley only");
    Vec lam = generator_eigenvalues(id, n);
    double scale = lam.cwiseAbs().maxCoeff();
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && std::abs(lam[j] - lam[i]) <= kDenomTol * std::max(1.0, scale))
                out.emplace_back(i, j);
    return out;
}

Vec diag_entries(const StructuredMatrix& A, const AlgebraId& id) {
    const int n = A.n;
    Vec d(n);
    Vec e = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        e[i] = 1.0;
        Vec u = transform_apply(id, e, false);
        d[i] = u.dot(matvec(A, u));  // Eigen dot conjugates the left factor
        e[i] = 0.0;
    }
    return d;
}

}  // namespace alp
