#include "alp/structured.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

#include "alp/errors.hpp"

namespace alp {

namespace {
constexpr double kCornerTol = 1e-13;

// avoid pow(0,0) pitfalls for the rational expansion
cxd lam_pow(cxd lam, int k) { return k == 0 ? cxd(1.0) : std::pow(lam, k); }

int embed_size(int n) {
    int m = 1;
    while (m < 2 * n) m <<= 1;
    return m;
}

Vec toeplitz_matvec(const Vec& a, const Vec& b, const Vec& x) {
    const int n = static_cast<int>(a.size());
    const int m = embed_size(n);
    Vec c = Vec::Zero(m), xe = Vec::Zero(m);
    for (int i = 0; i < n; ++i) c[i] = a[i];
    for (int i = 1; i < n; ++i) c[m - i] = b[i];
    for (int i = 0; i < n; ++i) xe[i] = x[i];
    Vec y = fft_backward((fft_forward(c).array() * fft_forward(xe).array()).matrix());
    return y.head(n) / static_cast<double>(m);
}

// JH is Toeplitz: (JH)_{ij} = h[(n-1) - (i-j)].
void hankel_toeplitz_vectors(const StructuredMatrix& H, Vec& a, Vec& b) {
    const int n = H.n;
    Vec h(2 * n - 1);
    h.head(n) = H.u;
    h.tail(n - 1) = H.v.tail(n - 1);
    a.resize(n);
    b.resize(n);
    for (int t = 0; t < n; ++t) {
        a[t] = h[n - 1 - t];
        b[t] = h[n - 1 + t];
    }
}

std::vector<std::array<double, 2>> vec_to_pairs(const Vec& x) {
    std::vector<std::array<double, 2>> out(x.size());
    for (int i = 0; i < x.size(); ++i) out[i] = {x[i].real(), x[i].imag()};
    return out;
}

Vec pairs_to_vec(const nlohmann::json& j) {
    Vec x(j.size());
    for (size_t i = 0; i < j.size(); ++i) x[i] = cxd(j[i][0], j[i][1]);
    return x;
}
}  // namespace

cxd StructuredMatrix::entry(int i, int j) const {
    cxd e = 0.0;
    if (has_toeplitz()) e += (i >= j) ? a[i - j] : b[j - i];
    if (has_hankel()) {
        int s = i + j;
        e += (s < n) ? u[s] : v[s - n + 1];
    }
    return e;
}

StructuredMatrix toeplitz(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.size() == 0) throw DimensionMismatch("toeplitz vectors");
    if (std::abs(a[0] - b[0]) > kCornerTol * (1.0 + std::abs(a[0])))
        throw CornerMismatch("a[0] != b[0]");
    StructuredMatrix A;
    A.kind = Kind::Toeplitz;
    A.n = static_cast<int>(a.size());
    A.a = a;
    A.b = b;
    A.b[0] = a[0];
    return A;
}

StructuredMatrix hankel(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.size() == 0) throw DimensionMismatch("hankel vectors");
    const int n = static_cast<int>(u.size());
    if (std::abs(u[n - 1] - v[0]) > kCornerTol * (1.0 + std::abs(v[0])))
        throw CornerMismatch("u[n-1] != v[0]");
    StructuredMatrix A;
    A.kind = Kind::Hankel;
    A.n = n;
    A.u = u;
    A.v = v;
    A.v[0] = u[n - 1];
    return A;
}

StructuredMatrix kms(int n, double lambda) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = std::pow(lambda, i);
    if (lambda == 0.0) {
        a.setZero();
        a[0] = 1.0;
    }
    return toeplitz(a, a);
}

StructuredMatrix z_matrix(int n, double lambda) {
    Vec a(n), b = Vec::Zero(n);
    for (int i = 0; i < n; ++i) a[i] = std::pow(lambda, i);
    if (lambda == 0.0) {
        a.setZero();
        a[0] = 1.0;
    }
    b[0] = a[0];
    return toeplitz(a, b);
}

StructuredMatrix add(const StructuredMatrix& t, const StructuredMatrix& h) {
    if (t.kind != Kind::Toeplitz || h.kind != Kind::Hankel)
        throw StructureViolation("add expects (Toeplitz, Hankel)");
    if (t.n != h.n) throw DimensionMismatch("add sizes");
    StructuredMatrix A;
    A.kind = Kind::ToeplitzPlusHankel;
    A.n = t.n;
    A.a = t.a;
    A.b = t.b;
    A.u = h.u;
    A.v = h.v;
    return A;
}

// Fourier coefficients t_k, k = -(n-1)..(n-1), of the symbol.
static std::vector<cxd> symbol_coeffs(const SymbolSpec& s, int n, int quad) {
    std::vector<cxd> t(2 * n - 1, 0.0);  // t[k + n - 1]
    auto at = [&](int k) -> cxd& { return t[k + n - 1]; };
    switch (s.variant) {
        case SymbolSpec::Variant::ZetaLambda:
            for (int k = 0; k < n; ++k) at(k) = std::pow(s.lambda, k);
            if (s.lambda == 0.0) at(0) = 1.0;
            break;
        case SymbolSpec::Variant::KmsKappa:
            for (int k = -(n - 1); k < n; ++k) at(k) = std::pow(s.lambda, std::abs(k));
            if (s.lambda == 0.0) {
                std::fill(t.begin(), t.end(), cxd(0.0));
                at(0) = 1.0;
            }
            break;
        case SymbolSpec::Variant::PowerAlpha:
            // |k|^{-alpha} off the diagonal; no constant term.
            for (int k = 1; k < n; ++k) at(k) = at(-k) = std::pow(double(k), -s.alpha);
            break;
        case SymbolSpec::Variant::LogSingularity:
            for (int k = 1; k < n; ++k) at(k) = 1.0 / (double(k) * std::pow(s.z0, k));
            break;
        case SymbolSpec::Variant::RationalPQ: {
            if (s.q_roots.empty()) throw DegreeViolation("q has no roots");
            for (size_t i = 0; i < s.q_roots.size(); ++i)
                for (size_t j = i + 1; j < s.q_roots.size(); ++j)
                    if (std::abs(s.q_roots[i] - s.q_roots[j]) < 1e-12)
                        throw DuplicateRoots();
            if (s.p_coeffs.size() >= s.q_roots.size() + 1)
                throw DegreeViolation("deg p >= deg q");
            auto peval = [&](cxd z) {
                cxd r = 0.0, zp = 1.0;
                for (cxd c : s.p_coeffs) { r += c * zp; zp *= z; }
                return r;
            };
            for (size_t i = 0; i < s.q_roots.size(); ++i) {
                cxd zi = s.q_roots[i], qp = 1.0;
                for (size_t j = 0; j < s.q_roots.size(); ++j)
                    if (j != i) qp *= zi - s.q_roots[j];
                cxd rho = peval(zi) / qp;
                // -rho/z_i * Z(1/z_i): lower-triangular expansion
                cxd c = -rho / zi, lam = 1.0 / zi;
                for (int k = 0; k < n; ++k) { at(k) += c * lam_pow(lam, k); }
            }
            break;
        }
        case SymbolSpec::Variant::FourierCoefficients: {
            if (!s.coeffs.empty()) {
                if (static_cast<int>(s.coeffs.size()) != 2 * n - 1)
                    throw DimensionMismatch("coefficient list must have 2n-1 entries");
                t = s.coeffs;
            } else {
                if (quad < 4 * n) throw QuadratureUnderResolved();
                for (int k = -(n - 1); k < n; ++k) {
                    cxd acc = 0.0;
                    for (int m = 0; m < quad; ++m) {
                        double th = 2.0 * M_PI * m / quad;
                        acc += s.f(th) * std::exp(cxd(0.0, -k * th));
                    }
                    at(k) = acc / double(quad);
                }
            }
            break;
        }
    }
    return t;
}

StructuredMatrix toeplitz_from_symbol(const SymbolSpec& spec, int n, int quadrature_points) {
    auto t = symbol_coeffs(spec, n, quadrature_points);
    Vec a(n), b(n);
    for (int k = 0; k < n; ++k) {
        a[k] = t[k + n - 1];
        b[k] = t[n - 1 - k];
    }
    return toeplitz(a, b);
}

StructuredMatrix hankel_from_symbol(const SymbolSpec& spec, int n, int quadrature_points) {
    auto t = symbol_coeffs(spec, n, quadrature_points);
    // finite section of the nonnegative-frequency coefficients:
    // H_{ij} = t_{i+j} for i+j <= n-1, zero below the antidiagonal
    Vec u(n), v = Vec::Zero(n);
    for (int s = 0; s < n; ++s) u[s] = t[s + n - 1];
    v[0] = u[n - 1];
    return hankel(u, v);
}

Vec matvec(const StructuredMatrix& A, const Vec& x) {
    if (x.size() != A.n) throw DimensionMismatch("matvec");
    Vec y = Vec::Zero(A.n);
    if (A.has_toeplitz()) y += toeplitz_matvec(A.a, A.b, x);
    if (A.has_hankel()) {
        Vec ta, tb;
        hankel_toeplitz_vectors(A, ta, tb);
        Vec z = toeplitz_matvec(ta, tb, x);
        y += z.reverse();
    }
    return y;
}

Mat dense(const StructuredMatrix& A, int dense_cap) {
    if (A.n > dense_cap) throw DenseCapExceeded();
    Mat M(A.n, A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) M(i, j) = A.entry(i, j);
    return M;
}

std::string to_json(const StructuredMatrix& A) {
    nlohmann::json j;
    j["kind"] = A.kind == Kind::Toeplitz ? "toeplitz"
               : A.kind == Kind::Hankel ? "hankel"
                                        : "toeplitz_plus_hankel";
    j["n"] = A.n;
    if (A.has_toeplitz()) {
        j["a"] = vec_to_pairs(A.a);
        j["b"] = vec_to_pairs(A.b);
    }
    if (A.has_hankel()) {
        j["u"] = vec_to_pairs(A.u);
        j["v"] = vec_to_pairs(A.v);
    }
    return j.dump(2);
}

StructuredMatrix matrix_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::string kind = j.at("kind");
    if (kind == "toeplitz") return toeplitz(pairs_to_vec(j.at("a")), pairs_to_vec(j.at("b")));
    if (kind == "hankel") return hankel(pairs_to_vec(j.at("u")), pairs_to_vec(j.at("v")));
    if (kind == "toeplitz_plus_hankel")
        return add(toeplitz(pairs_to_vec(j.at("a")), pairs_to_vec(j.at("b"))),
                   hankel(pairs_to_vec(j.at("u")), pairs_to_vec(j.at("v"))));
    throw ConfigError("unknown matrix kind " + kind);
}

}  // namespace alp
