#pragma once
#include <vector>

#include "alp/preconditioner.hpp"
#include "alp/structured.hpp"

namespace alp {

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;  // ||r_k|| / ||b||
    bool converged = false;
    int cluster_outliers = -1;  // filled by cluster_report callers
    double wall_time = 0.0;     // seconds
};

struct ClusterReport {
    int outliers = 0;
    double condition_estimate = 0.0;
};

// (P + R)^-1 y when the skeleton belongs to the preconditioner, P^-1 y
// otherwise; left_J operators are J(P+R), so apply to Jy.
Vec apply_inverse(const AlgebraPlusLowRank& pr, const Vec& y);

SolveReport pcg(const StructuredMatrix& A, const AlgebraPlusLowRank* pr, const Vec& b,
                double tol, int maxit);
SolveReport gmres(const StructuredMatrix& A, const AlgebraPlusLowRank* pr, const Vec& b,
                  double tol, int maxit, int restart = 50);

ClusterReport cluster_report(const StructuredMatrix& A, const AlgebraPlusLowRank& pr,
                             double eps, int dense_cap = 4096);

}  // namespace alp
