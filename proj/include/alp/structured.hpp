#pragma once
#include <functional>
#include <optional>
#include <string>

#include "alp/fft.hpp"

namespace alp {

enum class Kind { Toeplitz, Hankel, ToeplitzPlusHankel };

// Toeplitz part: entry(i,j) = a[i-j] (i>=j) / b[j-i] (j>=i), a[0] == b[0].
// Hankel part: first row u, last column v, u[n-1] == v[0];
// entry(i,j) = h[i+j] with h = (u, v[1:]).
struct StructuredMatrix {
    Kind kind = Kind::Toeplitz;
    int n = 0;
    Vec a, b;  // valid unless kind == Hankel
    Vec u, v;  // valid unless kind == Toeplitz

    cxd entry(int i, int j) const;
    bool has_toeplitz() const { return kind != Kind::Hankel; }
    bool has_hankel() const { return kind != Kind::Toeplitz; }
};

struct SymbolSpec {
    enum class Variant {
        ZetaLambda,
        KmsKappa,
        RationalPQ,
        PowerAlpha,
        LogSingularity,
        FourierCoefficients
    };
    Variant variant = Variant::KmsKappa;
    double lambda = 0.0;                       // ZetaLambda / KmsKappa
    std::vector<cxd> p_coeffs;                 // RationalPQ, ascending powers
    std::vector<cxd> q_roots;                  // RationalPQ, distinct
    double alpha = 1.0;                        // PowerAlpha
    cxd z0 = 1.0;                              // LogSingularity, |z0| == 1
    std::function<cxd(double)> f;              // FourierCoefficients, f(theta)
    std::vector<cxd> coeffs;                   // alternative: t_{-(n-1)..(n-1)}
};

StructuredMatrix toeplitz(const Vec& a, const Vec& b);
StructuredMatrix hankel(const Vec& u, const Vec& v);
StructuredMatrix kms(int n, double lambda);
StructuredMatrix z_matrix(int n, double lambda);
StructuredMatrix toeplitz_from_symbol(const SymbolSpec& spec, int n,
                                      int quadrature_points = 0);
StructuredMatrix hankel_from_symbol(const SymbolSpec& spec, int n,
                                    int quadrature_points = 0);
StructuredMatrix add(const StructuredMatrix& t, const StructuredMatrix& h);

Vec matvec(const StructuredMatrix& A, const Vec& x);
Mat dense(const StructuredMatrix& A, int dense_cap = 4096);

std::string to_json(const StructuredMatrix& A);
StructuredMatrix matrix_from_json(const std::string& text);

}  // namespace alp
