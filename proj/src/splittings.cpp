#include "alp/splittings.hpp"

#include <cmath>

#include "alp/errors.hpp"

namespace alp {

namespace {

Vec pvec(cxd lambda, int n) {
    Vec p(n);
    cxd v = 1.0;
    for (int i = 0; i < n; ++i) {
        p[i] = v;
        v *= lambda;
    }
    return p;
}

cxd ipow(cxd z, int k) {
    cxd r = 1.0;
    bool inv = k < 0;
    for (int i = 0; i < std::abs(k); ++i) r *= z;
    return inv ? 1.0 / r : r;
}

// first-row vector of the circulant part of the Z_n(lambda) splitting:
// x = (phi - lambda^n)^{-1} J Pi_phi p(lambda)
Vec z_circ_row(int n, cxd lambda, cxd phi) {
    cxd ln = ipow(lambda, n);
    if (std::abs(ln - phi) < 1e-12) throw PoleAtPhi();
    Vec p = pvec(lambda, n);
    Vec pip(n);
    pip.head(n - 1) = p.tail(n - 1);
    pip[n - 1] = phi * p[0];
    return Vec(pip.reverse()) / (phi - ln);
}

struct Rank1 {
    Vec x, y;  // term x y^T (plain transpose)
};

// Z_n(lambda) - C_phi(x) = (lambda p)(Jp)^T / (lambda^n - phi)
Rank1 z_remainder(int n, cxd lambda, cxd phi) {
    Vec p = pvec(lambda, n);
    return {lambda * p / (ipow(lambda, n) - phi), p.reverse()};
}

AlgebraPlusLowRank finish(const AlgebraId& id, const Vec& row_or_d, bool row_is_eigs,
                          const std::vector<Rank1>& terms) {
    AlgebraPlusLowRank pr;
    pr.algebra = id;
    pr.d = row_is_eigs ? row_or_d : element_from_first_row(id, row_or_d);
    const int n = static_cast<int>(pr.d.size());
    std::vector<Rank1> keep;
    for (const auto& t : terms)
        if (t.x.norm() * t.y.norm() > 1e-300) keep.push_back(t);
    pr.G = Mat::Zero(n, keep.size());
    pr.H = Mat::Zero(n, keep.size());
    for (size_t t = 0; t < keep.size(); ++t) {
        pr.G.col(t) = transform_apply(id, keep[t].x, true);
        pr.H.col(t) = transform_apply(id, keep[t].y.conjugate(), true);
    }
    pr.achieved_rank = static_cast<int>(keep.size());
    pr.skeleton_in_preconditioner = false;
    return pr;
}

void check_real_phi(cxd phi) {
    if (std::abs(phi - cxd(1.0)) > 1e-12 && std::abs(phi - cxd(-1.0)) > 1e-12)
        throw UnsupportedCombination("needs phi in {1,-1}");
}

// chi polynomial coefficients with chi(k) - phit chi(k-n) = k^p at k = 1..n-1
Vec chi_solve(int p, int n, cxd phit, double* resid_out) {
    const int d = p + 1;
    const int nsamp = std::min(n - 1, 4 * (p + 2));
    Mat A(nsamp, d + 1);
    Vec b(nsamp);
    for (int r = 0; r < nsamp; ++r) {
        double k = r + 1;
        for (int m = 0; m <= d; ++m) A(r, m) = std::pow(k, m) - phit * ipow(cxd(k - n), m);
        b[r] = std::pow(k, p);
    }
    RVec cols(d + 1);
    for (int m = 0; m <= d; ++m) {
        cols[m] = A.col(m).norm();
        if (cols[m] == 0) cols[m] = 1;
        A.col(m) /= cols[m];
    }
    Vec c = A.completeOrthogonalDecomposition().solve(b);
    double resid = (A * c - b).cwiseAbs().maxCoeff();
    for (int m = 0; m <= d; ++m) c[m] /= cols[m];
    if (resid_out) *resid_out = resid;
    return c;
}

cxd poly_eval(const Vec& c, cxd k) {
    cxd r = 0.0, kp = 1.0;
    for (int m = 0; m < c.size(); ++m) {
        r += c[m] * kp;
        kp *= k;
    }
    return r;
}

// rank-(p+2) factorization of R_ij = chi(i-j) mu^{i-j}:
// R = V A W^T, V[:,t] = i^t mu^i, W[:,s] = j^s mu^-j, A_{t,s} = c_{t+s} C(t+s,t) (-1)^s
std::vector<Rank1> poly_toeplitz_factors(const Vec& c, int n, cxd mu) {
    const int d = static_cast<int>(c.size());  // p + 2 columns
    Mat V(n, d), W(n, d);
    for (int i = 0; i < n; ++i) {
        cxd mi = ipow(mu, i), wi = ipow(mu, -i);
        for (int t = 0; t < d; ++t) {
            V(i, t) = std::pow(double(i), t) * mi;
            W(i, t) = std::pow(double(i), t) * wi;
        }
    }
    Mat A = Mat::Zero(d, d);
    auto binom = [](int m, int t) {
        double r = 1;
        for (int q = 0; q < t; ++q) r = r * (m - q) / (q + 1);
        return r;
    };
    for (int t = 0; t < d; ++t)
        for (int s = 0; t + s < d; ++s) A(t, s) = c[t + s] * binom(t + s, t) * ((s % 2) ? -1.0 : 1.0);
    Mat VA = V * A;
    std::vector<Rank1> out;
    for (int t = 0; t < d; ++t) out.push_back({VA.col(t), W.col(t)});
    return out;
}

// first row of C given its first column (C in C_phi): row_0 = x0, row_i = phi x_{n-i}
Vec circ_row_of_transpose(const Vec& row, cxd phi) {
    const int n = static_cast<int>(row.size());
    Vec col(n);
    col[0] = row[0];
    for (int i = 1; i < n; ++i) col[i] = phi * row[n - i];
    return col;
}

struct PowerParts {
    Vec row;                    // first row of the circulant part
    std::vector<Rank1> terms;   // remainder factors
};

// T_n(k^p lambda^k lower, 0) = P_phi + R with R_ij = chi(i-j) lambda^{i-j}
PowerParts power_lower_parts(int n, int p, cxd lambda, cxd phi) {
    cxd phit = phi * ipow(lambda, -n);
    double resid = 0.0;
    Vec c = chi_solve(p, n, phit, &resid);
    if (resid > 1e-8) throw IllConditionedChi();
    Vec g = Vec::Zero(n);
    for (int k = 1; k < n; ++k) g[k] = std::pow(double(k), p) * ipow(lambda, k);
    if (p == 0) g[0] = 1.0;
    // P first row: row0(T(g,0)) - row0(R) = (g0 - a0, -b_1, ..., -b_{n-1})
    Vec row(n);
    row[0] = g[0] - poly_eval(c, 0.0);
    for (int k = 1; k < n; ++k) row[k] = -poly_eval(c, cxd(-k)) * ipow(lambda, -k);
    return {row, poly_toeplitz_factors(c, n, lambda)};
}

}  // namespace

AlgebraPlusLowRank precond_Z(int n, double lambda, cxd phi) {
    AlgebraId id = AlgebraId::circulant(phi);
    if (lambda == 0.0) return finish(id, Vec::Ones(n), true, {});
    Vec x = z_circ_row(n, lambda, phi);
    return finish(id, x, false, {z_remainder(n, lambda, phi)});
}

AlgebraPlusLowRank precond_KMS(int n, double lambda, cxd phi) {
    AlgebraId id = AlgebraId::circulant(phi);
    if (lambda == 0.0) return finish(id, Vec::Ones(n), true, {});
    cxd ln = ipow(cxd(lambda), n);
    if (std::abs(ln - phi) < 1e-12 || std::abs(ln - std::conj(phi)) < 1e-12) throw PoleAtPhi();
    Vec p = pvec(lambda, n);
    Vec xi = z_circ_row(n, lambda, phi) + (std::conj(phi) / (std::conj(phi) - ln)) * p;
    xi[0] -= 1.0;
    Rank1 r1 = z_remainder(n, lambda, phi);
    Rank1 r2{Vec(p.reverse()) / (ln - std::conj(phi)), lambda * p};
    return finish(id, xi, false, {r1, r2});
}

AlgebraPlusLowRank precond_rational(const std::vector<cxd>& p_coeffs,
                                    const std::vector<cxd>& q_roots, int n, cxd phi,
                                    const std::vector<cxd>* residuals) {
    if (q_roots.empty()) throw DegreeViolation("q has no roots");
    if (p_coeffs.size() >= q_roots.size() + 1) throw DegreeViolation("deg p >= deg q");
    for (size_t i = 0; i < q_roots.size(); ++i)
        for (size_t j = i + 1; j < q_roots.size(); ++j)
            if (std::abs(q_roots[i] - q_roots[j]) < 1e-12) throw DuplicateRoots();
    AlgebraId id = AlgebraId::circulant(phi);
    Vec row = Vec::Zero(n);
    std::vector<Rank1> terms;
    for (size_t i = 0; i < q_roots.size(); ++i) {
        cxd zi = q_roots[i];
        cxd rho;
        if (residuals) {
            rho = (*residuals)[i];
        } else {
            cxd qp = 1.0;
            for (size_t j = 0; j < q_roots.size(); ++j)
                if (j != i) qp *= zi - q_roots[j];
            cxd pe = 0.0, zp = 1.0;
            for (cxd c : p_coeffs) { pe += c * zp; zp *= zi; }
            rho = pe / qp;
        }
        cxd lam = 1.0 / zi, coef = -rho / zi;
        row += coef * z_circ_row(n, lam, phi);
        Rank1 r = z_remainder(n, lam, phi);
        terms.push_back({coef * r.x, r.y});
    }
    return finish(id, row, false, terms);
}

AlgebraPlusLowRank precond_power(int n, int p, cxd phi, bool symmetric) {
    if (p < 0 || p > 12) throw ConfigError("power exponent out of range");
    AlgebraId id = AlgebraId::circulant(phi);
    PowerParts lower = power_lower_parts(n, p, 1.0, phi);
    if (!symmetric) return finish(id, lower.row, false, lower.terms);
    check_real_phi(phi);
    // T^s = T(v,0) + T(v,0)^T - v0 I
    Vec row = lower.row + circ_row_of_transpose(lower.row, phi);
    if (p == 0) row[0] -= 1.0;
    std::vector<Rank1> terms = lower.terms;
    for (const auto& t : lower.terms) terms.push_back({t.y, t.x});  // transpose
    return finish(id, row, false, terms);
}

ExpSumFit exp_sum_fit(double alpha, int n, double eps) {
    if (alpha <= 0 || eps <= 0 || eps > 0.5) throw ConfigError("exp_sum_fit domain");
    ExpSumFit fit;
    fit.alpha = alpha;
    fit.n = n;
    auto relerr = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double worst = 0.0;
        for (int k = 1; k <= n; ++k) {
            double s = 0.0;
            for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::exp(-b[i] * k);
            worst = std::max(worst, std::abs(s - std::pow(k, -alpha)) * std::pow(k, alpha));
        }
        return worst;
    };
    double h = 8.0 / std::log(10.0 / eps);
    for (int attempt = 0; attempt < 8; ++attempt, h *= 0.7) {
        double umin = std::log(std::pow(eps * std::tgamma(alpha + 1) / 4.0, 1.0 / alpha) / n);
        double T = std::log(4.0 / (eps * std::tgamma(alpha))) + 10.0;
        T += std::max(0.0, alpha - 1.0) * std::log(T);
        double umax = std::log(T);
        std::vector<double> a, b;
        for (double u = umin; u <= umax + h; u += h) {
            b.push_back(std::exp(u));
            a.push_back(h * std::exp(alpha * u) / std::tgamma(alpha));
        }
        if (relerr(a, b) > eps) continue;
        // greedy prune smallest-contribution terms while the bound holds
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<size_t> order(a.size());
            for (size_t i = 0; i < a.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
                return a[x] * std::exp(-b[x]) < a[y] * std::exp(-b[y]);
            });
            for (size_t i : order) {
                std::vector<double> a2, b2;
                for (size_t q = 0; q < a.size(); ++q)
                    if (q != i) { a2.push_back(a[q]); b2.push_back(b[q]); }
                if (relerr(a2, b2) <= eps) {
                    a = std::move(a2);
                    b = std::move(b2);
                    changed = true;
                    break;
                }
            }
        }
        fit.a = a;
        fit.b = b;
        fit.achieved_relative_error = relerr(a, b);
        return fit;
    }
    throw FitFailed();
}

AlgebraPlusLowRank precond_log(int n, cxd z0, cxd phi, double eps) {
    if (std::abs(std::abs(z0) - 1.0) > 1e-12) throw ConfigError("|z0| must be 1");
    if (std::abs(ipow(z0, -n) - phi) < 1e-12) throw PoleAtPhi();
    ExpSumFit fit = exp_sum_fit(1.0, n, eps);
    AlgebraId id = AlgebraId::circulant(phi);
    Vec row = Vec::Zero(n);
    std::vector<Rank1> terms;
    double asum = 0.0;
    for (int i = 0; i < fit.rho(); ++i) {
        cxd lam = std::exp(-fit.b[i]) / z0;
        row += fit.a[i] * z_circ_row(n, lam, phi);
        Rank1 r = z_remainder(n, lam, phi);
        terms.push_back({fit.a[i] * r.x, r.y});
        asum += fit.a[i];
    }
    row[0] -= asum;  // each Z carries a unit diagonal; the target has t0 = 0
    AlgebraPlusLowRank pr = finish(id, row, false, terms);
    pr.epsilon_target = eps;
    return pr;
}

AlgebraPlusLowRank precond_generalized_kms(const std::vector<GenKmsTerm>& terms, int n, cxd phi,
                                           double eps) {
    (void)eps;
    check_real_phi(phi);
    AlgebraId id = AlgebraId::circulant(phi);
    Vec row = Vec::Zero(n);
    std::vector<Rank1> factors;
    for (const auto& term : terms) {
        if (term.gamma == 0.0) continue;
        if (static_cast<int>(term.f_coeffs.size()) > 13) throw ConfigError("degree too large");
        if (std::abs(term.lambda) >= 1.0) throw ConfigError("|lambda| must be < 1");
        double f0 = term.f_coeffs.empty() ? 0.0 : term.f_coeffs[0];
        for (size_t m = 0; m < term.f_coeffs.size(); ++m) {
            double cm = term.f_coeffs[m];
            if (cm == 0.0) continue;
            PowerParts lower = power_lower_parts(n, static_cast<int>(m), term.lambda, phi);
            Vec contrib = lower.row + circ_row_of_transpose(lower.row, phi);
            row += term.gamma * cm * contrib;
            for (const auto& t : lower.terms) {
                factors.push_back({term.gamma * cm * t.x, t.y});
                factors.push_back({term.gamma * cm * t.y, t.x});
            }
        }
        row[0] -= term.gamma * f0;  // remove the double-counted diagonal
    }
    return finish(id, row, false, factors);
}

AlgebraPlusLowRank precond_hankel(const SymbolSpec& spec, int n, cxd phi, double eps) {
    // T = JH is a combination of Z_n(lambda_i); split each term and flag J
    AlgebraId id = AlgebraId::circulant(phi);
    Vec row = Vec::Zero(n);
    std::vector<Rank1> terms;
    bool warn = false;
    auto add_scaled_Z = [&](cxd coef, cxd lam) {
        row += coef * z_circ_row(n, lam, phi);
        Rank1 r = z_remainder(n, lam, phi);
        terms.push_back({coef * r.x, r.y});
    };
    switch (spec.variant) {
        case SymbolSpec::Variant::ZetaLambda:
        case SymbolSpec::Variant::KmsKappa: {
            // h_s = lambda^s, so JH = lambda^{n-1} Z_n(1/lambda)
            double lam = spec.lambda;
            if (lam == 0.0) {
                // H degenerates to E_00, so JH = e_n e_1^T: pure rank 1
                terms.push_back({Vec(Vec::Unit(n, n - 1)), Vec(Vec::Unit(n, 0))});
                break;
            }
            add_scaled_Z(ipow(cxd(lam), n - 1), 1.0 / lam);
            break;
        }
        case SymbolSpec::Variant::RationalPQ: {
            SymbolSpec check = spec;  // reuse validation from the Toeplitz path
            toeplitz_from_symbol(check, 2, 8);
            for (size_t i = 0; i < spec.q_roots.size(); ++i) {
                cxd zi = spec.q_roots[i], qp = 1.0;
                for (size_t j = 0; j < spec.q_roots.size(); ++j)
                    if (j != i) qp *= zi - spec.q_roots[j];
                cxd pe = 0.0, zp = 1.0;
                for (cxd c : spec.p_coeffs) { pe += c * zp; zp *= zi; }
                cxd rho = pe / qp;
                // t_s = -(rho/z) z^{-s}  =>  JH = sum -rho z^{-n} Z_n(z)
                add_scaled_Z(-rho * ipow(zi, -n), zi);
            }
            warn = true;  // Kronecker note: such Hankels are already low rank
            break;
        }
        case SymbolSpec::Variant::LogSingularity: {
            ExpSumFit fit = exp_sum_fit(1.0, n, eps);
            for (int i = 0; i < fit.rho(); ++i) {
                cxd lam = std::exp(fit.b[i]) * spec.z0;
                cxd coef = fit.a[i] * std::exp(-fit.b[i] * (n - 1)) * ipow(spec.z0, -(n - 1));
                add_scaled_Z(coef, lam);
            }
            break;
        }
        case SymbolSpec::Variant::FourierCoefficients: {
            // supported when JH already lies in the algebra (e.g. H = J)
            StructuredMatrix H = hankel_from_symbol(spec, n, 8 * n);
            Vec h(2 * n - 1);
            h.head(n) = H.u;
            h.tail(n - 1) = H.v.tail(n - 1);
            Vec a(n), b(n);
            for (int t = 0; t < n; ++t) {
                a[t] = h[n - 1 - t];
                b[t] = h[n - 1 + t];
            }
            double scale = a.norm() + b.norm();
            for (int d = 1; d < n; ++d)
                if (std::abs(a[d] - phi * b[n - d]) > 1e-12 * (1.0 + scale))
                    throw UnsupportedCombination("Hankel coefficient symbol not circulant");
            row = b;  // first row of JH
            break;
        }
        default:
            throw UnsupportedCombination("unsupported Hankel symbol");
    }
    AlgebraPlusLowRank pr = finish(id, row, false, terms);
    pr.left_J = true;
    pr.kronecker_warning = warn;
    pr.epsilon_target = eps;
    return pr;
}

AlgebraPlusLowRank precond_hartley_kms(int n, double lambda, int hartley_k) {
    double phi = hartley_phi(hartley_k);
    AlgebraPlusLowRank circ = precond_KMS(n, lambda, phi);
    AlgebraId hid = AlgebraId::hartley(hartley_k);
    AlgebraId cid = AlgebraId::circulant(phi);
    // re-express P (a symmetric phi-circulant, hence in the Hartley algebra)
    // and the skeleton in the Hartley eigenbasis
    AlgebraPlusLowRank out;
    out.algebra = hid;
    out.d.resize(n);
    const Mat& UH = transform_matrix(hid, n);
    for (int i = 0; i < n; ++i) {
        Vec w = transform_apply(cid, UH.col(i), true);
        cxd acc = 0.0;
        for (int q = 0; q < n; ++q) acc += std::norm(w[q]) * circ.d[q];
        out.d[i] = acc;
    }
    const int r = circ.achieved_rank;
    out.G = Mat::Zero(n, r);
    out.H = Mat::Zero(n, r);
    for (int t = 0; t < r; ++t) {
        // original-coordinate factors, then into the Hartley basis
        Vec x = transform_apply(cid, circ.G.col(t), false);
        Vec y = transform_apply(cid, circ.H.col(t), false);
        out.G.col(t) = transform_apply(hid, x, true);
        out.H.col(t) = transform_apply(hid, y, true);
    }
    out.achieved_rank = r;
    out.skeleton_in_preconditioner = false;
    return out;
}

}  // namespace alp
