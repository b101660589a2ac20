#include "alp/algebras.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "alp/errors.hpp"

namespace alp {

namespace {

const std::map<std::string, TrigParams>& mu_table() {
    static const std::map<std::string, TrigParams> t = {
        {"DCT1", {0, 2, 2, 0}},  {"DCT3", {0, 2, 1, 0}},  {"DCT5", {0, 2, 1, 1}},
        {"DCT7", {0, 2, 1, -1}}, {"DST3", {0, 1, 2, 0}},  {"DST1", {0, 1, 1, 0}},
        {"DST7", {0, 1, 1, 1}},  {"DST5", {0, 1, 1, -1}}, {"DCT6", {1, 1, 2, 0}},
        {"DCT8", {1, 1, 1, 0}},  {"DCT2", {1, 1, 1, 1}},  {"DCT4", {1, 1, 1, -1}},
        {"DST8", {-1, 1, 2, 0}}, {"DST6", {-1, 1, 1, 0}}, {"DST4", {-1, 1, 1, 1}},
        {"DST2", {-1, 1, 1, -1}},
    };
    return t;
}

// Row k, column h of the sampling table for the named family.
double table_entry(const std::string& f, int n, int k, int h) {
    const double kk = k, hh = h, nn = n;
    if (f == "DST1") return std::sin((kk + 1) * (hh + 1) * M_PI / (nn + 1));
    if (f == "DST2") return std::sin((kk + 1) * (hh + .5) * M_PI / nn);
    if (f == "DST3") return std::sin((kk + .5) * (hh + 1) * M_PI / nn);
    if (f == "DST4") return std::sin((kk + .5) * (hh + .5) * M_PI / nn);
    if (f == "DST5") return std::sin((kk + 1) * (hh + 1) * M_PI / (nn + .5));
    if (f == "DST6") return std::sin((kk + 1) * (hh + .5) * M_PI / (nn + .5));
    if (f == "DST7") return std::sin((kk + .5) * (hh + 1) * M_PI / (nn + .5));
    if (f == "DST8") return std::sin((kk + .5) * (hh + .5) * M_PI / (nn - .5));
    if (f == "DCT1") return std::cos(kk * hh * M_PI / (nn - 1));
    if (f == "DCT2") return std::cos(kk * (hh + .5) * M_PI / nn);
    if (f == "DCT3") return std::cos((kk + .5) * hh * M_PI / nn);
    if (f == "DCT4") return std::cos((kk + .5) * (hh + .5) * M_PI / nn);
    if (f == "DCT5") return std::cos(kk * hh * M_PI / (nn - .5));
    if (f == "DCT6") return std::cos(kk * (hh + .5) * M_PI / (nn - .5));
    if (f == "DCT7") return std::cos((kk + .5) * hh * M_PI / (nn - .5));
    if (f == "DCT8") return std::cos((kk + .5) * (hh + .5) * M_PI / (nn + .5));
    throw ConfigError("unknown trig family " + f);
}

double theta_k(const std::string& f, int n, int k) {
    const double kk = k, nn = n;
    if (f == "DST1") return (kk + 1) * M_PI / (nn + 1);
    if (f == "DST2") return (kk + 1) * M_PI / nn;
    if (f == "DST3" || f == "DST4") return (kk + .5) * M_PI / nn;
    if (f == "DST5" || f == "DST6") return (kk + 1) * M_PI / (nn + .5);
    if (f == "DST7") return (kk + .5) * M_PI / (nn + .5);
    if (f == "DST8") return (kk + .5) * M_PI / (nn - .5);
    if (f == "DCT1") return kk * M_PI / (nn - 1);
    if (f == "DCT2") return kk * M_PI / nn;
    if (f == "DCT3" || f == "DCT4") return (kk + .5) * M_PI / nn;
    if (f == "DCT5" || f == "DCT6") return kk * M_PI / (nn - .5);
    if (f == "DCT7") return (kk + .5) * M_PI / (nn - .5);
    if (f == "DCT8") return (kk + .5) * M_PI / (nn + .5);
    throw ConfigError("unknown trig family " + f);
}

RMat trig_transform(const std::string& f, int n) {
    TrigParams mu = trig_mu(f);
    RVec dinv = RVec::Ones(n);
    for (int i = 1; i < n; ++i) dinv[i] = std::sqrt(mu.mu2);
    dinv[n - 1] = std::sqrt(mu.mu2) / std::sqrt(mu.mu3);
    RMat U(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) U(i, k) = table_entry(f, n, k, i) * dinv[i];
    for (int k = 0; k < n; ++k) U.col(k).normalize();
    return U;
}

double cas(double x) { return std::cos(x) + std::sin(x); }

RMat hartley_H1(int n) {
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cas(2 * M_PI * i * j / n);
    return M / std::sqrt(double(n));
}

RMat hartley_K(int n) {
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cas(M_PI * i * (2 * j + 1) / n);
    return M / std::sqrt(double(n));
}

RMat hartley_G(int n) {
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cas(M_PI * (2 * i + 1) * (2 * j + 1) / (2 * n));
    return M / std::sqrt(double(n));
}

RMat sparse_E1(int n) {
    RMat M = RMat::Zero(n, n);
    M(0, 0) = std::sqrt(2.0);
    int s, c0;
    if (n % 2 == 0) {
        s = n / 2 - 1;
        M(n / 2, n / 2) = std::sqrt(2.0);
        c0 = n / 2 + 1;
    } else {
        s = (n - 1) / 2;
        c0 = s + 1;
    }
    for (int r = 0; r < s; ++r) {
        int i = 1 + r;
        M(i, i) = 1;
        M(i, c0 + (s - 1 - r)) = 1;
        M(c0 + r, 1 + (s - 1 - r)) = -1;
        M(c0 + r, c0 + r) = 1;
    }
    return M / std::sqrt(2.0);
}

RMat sparse_E2(int n) {
    RMat M = RMat::Zero(n, n);
    int s, c0;
    if (n % 2 == 0) {
        s = n / 2;
        c0 = s;
    } else {
        s = (n - 1) / 2;
        c0 = s + 1;
        M(s, s) = std::sqrt(2.0);
    }
    for (int r = 0; r < s; ++r) {
        M(r, r) = 1;
        M(r, c0 + (s - 1 - r)) = -1;
        M(c0 + r, (s - 1 - r)) = 1;
        M(c0 + r, c0 + r) = 1;
    }
    return M / std::sqrt(2.0);
}

RMat hartley_transform(int k, int n) {
    switch (k) {
        case 1: return hartley_H1(n);
        case 2: return hartley_K(n);
        case 3: return hartley_G(n);
        case 4: return hartley_K(n).transpose();
        case 5: return hartley_K(n).transpose() * sparse_E1(n);
        case 6: return hartley_G(n) * sparse_E2(n);
        case 7: return hartley_H1(n) * sparse_E1(n).transpose();
        case 8: return hartley_K(n) * sparse_E2(n).transpose();
        default: throw UnsupportedHartleyIndex();
    }
}

// Cross-sum extension of a first row into the DST1 tau algebra.
RMat tau_first_row_real(const RVec& x) {
    const int m = static_cast<int>(x.size());
    RMat A = RMat::Zero(m + 2, m + 2);
    A.block(1, 1, 1, m) = x.transpose();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) A(i + 1, j) = A(i, j - 1) + A(i, j + 1) - A(i - 1, j);
    return A.block(1, 1, m, m);
}

RMat exchange(int n) {
    RMat J = RMat::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
    return J;
}

RMat hartley_Mk(int k, int n) {
    RMat M = exchange(n);
    if (k == 5 || k == 6) return M;
    const int m = n - 1;
    RVec z = RVec::Zero(m);
    if (k == 1) {
        z[1] = 0.5;
        z[m - 2] = -0.5;
    } else if (k == 2) {
        z[1] = -0.5;
        z[m - 2] = -0.5;
    } else {
        throw UnsupportedHartleyIndex();
    }
    M.block(1, 1, m, m) += tau_first_row_real(z);
    return M;
}

Mat pi_phi(int n, cxd phi) {
    Mat P = Mat::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) P(i, i + 1) = 1.0;
    P(n - 1, 0) = phi;
    return P;
}

Mat trig_generator(const std::string& f, int n) {
    TrigParams mu = trig_mu(f);
    Mat X = Mat::Zero(n, n);
    X(0, 0) = mu.mu1;
    X(n - 1, n - 1) = mu.mu4;
    for (int i = 0; i + 1 < n; ++i) X(i, i + 1) = X(i + 1, i) = 1.0;
    X(0, 1) = X(1, 0) = std::sqrt(mu.mu2);
    X(n - 1, n - 2) = X(n - 2, n - 1) = std::sqrt(mu.mu3);
    return X;
}

std::mutex cache_mutex;
std::map<std::string, Mat>& transform_cache() {
    static std::map<std::string, Mat> cache;
    return cache;
}

Vec delta_phi(cxd phi, int n) {
    cxd root = phi_root(phi, n);
    Vec d(n);
    cxd p = 1.0;
    for (int i = 0; i < n; ++i) {
        d[i] = p;
        p *= root;
    }
    return d;
}

}  // namespace

cxd phi_root(cxd phi, int n) {
    return std::exp(cxd(0.0, std::arg(phi) / n));
}

double hartley_phi(int k) {
    switch (k) {
        case 1: case 4: case 5: case 7: return 1.0;
        case 2: case 3: case 6: case 8: return -1.0;
        default: throw UnsupportedHartleyIndex();
    }
}

TrigParams trig_mu(const std::string& name) {
    auto it = mu_table().find(name);
    if (it == mu_table().end()) throw ConfigError("unknown trig family " + name);
    return it->second;
}

AlgebraId AlgebraId::circulant(cxd phi) {
    if (std::abs(std::abs(phi) - 1.0) > 1e-12) throw ConfigError("|phi| must be 1");
    AlgebraId id;
    id.family = Family::PhiCirculant;
    id.phi = phi;
    return id;
}

AlgebraId AlgebraId::trig_algebra(const std::string& name) {
    trig_mu(name);
    AlgebraId id;
    id.family = Family::Trig;
    id.trig = name;
    return id;
}

AlgebraId AlgebraId::hartley(int k) {
    if (k < 1 || k > 8) throw UnsupportedHartleyIndex();
    AlgebraId id;
    id.family = Family::Hartley;
    id.k = k;
    return id;
}

AlgebraId AlgebraId::parse(const std::string& token) {
    auto colon = token.find(':');
    if (colon == std::string::npos) throw ConfigError("bad algebra token " + token);
    std::string head = token.substr(0, colon), rest = token.substr(colon + 1);
    if (head == "circ") {
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw ConfigError("bad circ token " + token);
        return circulant(cxd(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1))));
    }
    if (head == "trig") return trig_algebra(rest);
    if (head == "hartley") return hartley(std::stoi(rest));
    throw ConfigError("bad algebra token " + token);
}

std::string AlgebraId::token() const {
    char buf[64];
    switch (family) {
        case Family::PhiCirculant:
            std::snprintf(buf, sizeof(buf), "circ:%g,%g", phi.real(), phi.imag());
            return buf;
        case Family::Trig:
            return "trig:" + trig;
        case Family::Hartley:
            return "hartley:" + std::to_string(k);
    }
    return "";
}

const Mat& transform_matrix(const AlgebraId& id, int n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    std::string key = id.token() + "@" + std::to_string(n);
    auto it = transform_cache().find(key);
    if (it != transform_cache().end()) return it->second;
    Mat U;
    switch (id.family) {
        case AlgebraId::Family::PhiCirculant: {
            Vec d = delta_phi(id.phi, n);
            U.resize(n, n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    U(j, k) = d[j] * std::exp(cxd(0.0, -2.0 * M_PI * ((long long)j * k % n) / n));
            U /= std::sqrt(double(n));
            break;
        }
        case AlgebraId::Family::Trig:
            U = trig_transform(id.trig, n).cast<cxd>();
            break;
        case AlgebraId::Family::Hartley:
            U = hartley_transform(id.k, n).cast<cxd>();
            break;
    }
    return transform_cache().emplace(key, std::move(U)).first->second;
}

Vec transform_apply(const AlgebraId& id, const Vec& x, bool adjoint) {
    const int n = static_cast<int>(x.size());
    if (n == 0) throw DimensionMismatch("transform_apply");
    if (id.family == AlgebraId::Family::PhiCirculant) {
        Vec d = delta_phi(id.phi, n);
        double s = std::sqrt(double(n));
        if (adjoint) return fft_backward((d.conjugate().array() * x.array()).matrix()) / s;
        return (d.array() * fft_forward(x).array()).matrix() / s;
    }
    const Mat& U = transform_matrix(id, n);
    return adjoint ? Vec(U.adjoint() * x) : Vec(U * x);
}

GeneratorSpec generator(const AlgebraId& id, int n) {
    if (n < 2) throw DimensionMismatch("generator needs n >= 2");
    GeneratorSpec g;
    switch (id.family) {
        case AlgebraId::Family::PhiCirculant:
            g.primary = pi_phi(n, id.phi);
            break;
        case AlgebraId::Family::Trig:
            g.primary = trig_generator(id.trig, n);
            break;
        case AlgebraId::Family::Hartley: {
            if (n < 3) throw DimensionMismatch("hartley generator needs n >= 3");
            double phi = hartley_phi(id.k);
            Mat P = pi_phi(n, phi);
            g.primary = P + P.transpose();
            if (id.k == 1 || id.k == 2 || id.k == 5 || id.k == 6) {
                g.secondary = hartley_Mk(id.k, n).cast<cxd>();
                g.eigenvalues2 = secondary_eigenvalues(id, n);
            }
            break;
        }
    }
    g.eigenvalues = generator_eigenvalues(id, n);
    return g;
}

Vec generator_eigenvalues(const AlgebraId& id, int n) {
    Vec lam(n);
    switch (id.family) {
        case AlgebraId::Family::PhiCirculant: {
            cxd root = phi_root(id.phi, n);
            cxd omega = std::exp(cxd(0.0, -2.0 * M_PI / n));
            for (int k = 0; k < n; ++k) lam[k] = root * std::pow(omega, k);
            break;
        }
        case AlgebraId::Family::Trig:
            for (int k = 0; k < n; ++k) lam[k] = 2.0 * std::cos(theta_k(id.trig, n, k));
            break;
        case AlgebraId::Family::Hartley: {
            double phi = hartley_phi(id.k);
            if (id.k == 1 || id.k == 2 || id.k == 5 || id.k == 6) {
                for (int i = 0; i < n; ++i)
                    lam[i] = phi > 0 ? 2.0 * std::cos(2.0 * M_PI * i / n)
                                     : 2.0 * std::cos((2.0 * i + 1) * M_PI / n);
            } else {
                // no pinned column order for these transforms; read it off U
                const Mat& U = transform_matrix(id, n);
                Mat P = pi_phi(n, phi);
                Mat Y = P + P.transpose();
                for (int i = 0; i < n; ++i) lam[i] = U.col(i).dot(Y * U.col(i));
            }
            break;
        }
    }
    return lam;
}

Vec secondary_eigenvalues(const AlgebraId& id, int n) {
    if (id.family != AlgebraId::Family::Hartley) throw UnsupportedCombination("no secondary generator");
    Mat M = hartley_Mk(id.k, n).cast<cxd>();
    const Mat& U = transform_matrix(id, n);
    Vec lam(n);
    for (int i = 0; i < n; ++i) lam[i] = U.col(i).dot(M * U.col(i));
    return lam;
}

Vec element_from_first_row(const AlgebraId& id, const Vec& x) {
    const int n = static_cast<int>(x.size());
    if (id.family == AlgebraId::Family::Hartley && id.k == 3) throw NotAOneSpace();
    if (id.family == AlgebraId::Family::PhiCirculant) {
        Vec d = delta_phi(id.phi, n);
        return fft_forward((d.array() * x.array()).matrix());
    }
    const Mat& U = transform_matrix(id, n);
    Vec w = U.transpose() * x;
    Vec out(n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(U(0, i)) < 1e-12) throw NotAOneSpace();
        out[i] = w[i] / U(0, i);
    }
    return out;
}

}  // namespace alp
