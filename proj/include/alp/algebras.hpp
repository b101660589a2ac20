#pragma once
#include <optional>
#include <string>

#include "alp/fft.hpp"

namespace alp {

// Token forms: "circ:<re>,<im>", "trig:DST1".."trig:DCT8", "hartley:1".."hartley:8".
struct AlgebraId {
    enum class Family { PhiCirculant, Trig, Hartley };
    Family family = Family::PhiCirculant;
    cxd phi = 1.0;     // PhiCirculant, |phi| == 1
    std::string trig;  // Trig, one of the 16 family names
    int k = 0;         // Hartley, 1..8

    static AlgebraId circulant(cxd phi);
    static AlgebraId trig_algebra(const std::string& name);
    static AlgebraId hartley(int k);
    static AlgebraId parse(const std::string& token);
    std::string token() const;
};

struct TrigParams {
    double mu1, mu2, mu3, mu4;
};
TrigParams trig_mu(const std::string& name);

// Two generators at most: Hartley pairs (Y_phi, M_k); others have one.
struct GeneratorSpec {
    Mat primary;
    std::optional<Mat> secondary;
    Vec eigenvalues;
    Vec eigenvalues2;  // empty unless secondary is set
};

GeneratorSpec generator(const AlgebraId& id, int n);
Vec generator_eigenvalues(const AlgebraId& id, int n);
Vec secondary_eigenvalues(const AlgebraId& id, int n);  // Hartley k in {1,2,5,6}

// Dense unitary transform U; columns aligned with generator_eigenvalues.
const Mat& transform_matrix(const AlgebraId& id, int n);
// adjoint=true applies U*, false applies U. FFT path for circulants.
Vec transform_apply(const AlgebraId& id, const Vec& x, bool adjoint);

// Eigenvalues of the unique algebra element with first row x^T.
Vec element_from_first_row(const AlgebraId& id, const Vec& x);

double hartley_phi(int k);  // +1 or -1 per family table
cxd phi_root(cxd phi, int n);  // principal branch phi^{1/n}

}  // namespace alp
