#pragma once
#include <vector>

#include "alp/preconditioner.hpp"
#include "alp/structured.hpp"

namespace alp {

struct ExpSumFit {
    std::vector<double> a, b;  // k^-alpha ~ sum a_i exp(-b_i k)
    double alpha = 0.0;
    int n = 0;
    double achieved_relative_error = 0.0;
    int rho() const { return static_cast<int>(a.size()); }
};

AlgebraPlusLowRank precond_Z(int n, double lambda, cxd phi);
AlgebraPlusLowRank precond_KMS(int n, double lambda, cxd phi);
AlgebraPlusLowRank precond_rational(const std::vector<cxd>& p_coeffs,
                                    const std::vector<cxd>& q_roots, int n, cxd phi,
                                    const std::vector<cxd>* residuals = nullptr);
AlgebraPlusLowRank precond_power(int n, int p, cxd phi, bool symmetric = false);
ExpSumFit exp_sum_fit(double alpha, int n, double eps);
AlgebraPlusLowRank precond_log(int n, cxd z0, cxd phi, double eps);

struct GenKmsTerm {
    double gamma = 1.0;
    std::vector<double> f_coeffs;  // ascending powers
    double lambda = 0.0;
};
AlgebraPlusLowRank precond_generalized_kms(const std::vector<GenKmsTerm>& terms, int n, cxd phi,
                                           double eps);
AlgebraPlusLowRank precond_hankel(const SymbolSpec& spec, int n, cxd phi, double eps);
AlgebraPlusLowRank precond_hartley_kms(int n, double lambda, int hartley_k);

}  // namespace alp
