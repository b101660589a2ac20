#pragma once
#include <vector>

#include "alp/algebras.hpp"
#include "alp/structured.hpp"

namespace alp {

// Sum of dyads x_k y_k^* (conjugate transpose). Formulas below are derived
// with plain transposes, so constructors conjugate the second vector.
struct DyadicSum {
    int n = 0;
    std::vector<std::pair<Vec, Vec>> dyads;

    void add(const Vec& x, const Vec& y_conj) { dyads.emplace_back(x, y_conj); }
    // add a dyad given in x y^T form
    void add_t(const Vec& x, const Vec& y) { dyads.emplace_back(x, y.conjugate()); }
    Mat realize() const;
    int rank_bound() const { return static_cast<int>(dyads.size()); }
};

DyadicSum comm_toeplitz_circulant(const Vec& a, const Vec& b, cxd phi);
DyadicSum theta(const Vec& a, const Vec& b);
DyadicSum comm_toeplitz_X(const Vec& a, const Vec& b);
DyadicSum comm_hankel_X(const Vec& c, const Vec& d);
DyadicSum comm_toeplitz_trig(const Vec& a, const Vec& b, const TrigParams& mu);
DyadicSum comm_hankel_trig(const Vec& c, const Vec& d, const TrigParams& mu);
DyadicSum comm_toeplitz_Y(const Vec& a, const Vec& b, cxd phi);
DyadicSum comm_hankel_Y(const Vec& c, const Vec& d, cxd phi);
DyadicSum comm_M_k(const StructuredMatrix& A, int k);

}  // namespace alp
