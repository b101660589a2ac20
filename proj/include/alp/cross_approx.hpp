#pragma once
#include "alp/entry_oracle.hpp"
#include "alp/preconditioner.hpp"

namespace alp {

struct Skeleton {
    Mat G, H;  // R_hat = G H* on the off-diagonal mask
    double residual_estimate = 0.0;
    long queries = 0;
    bool budget_exhausted = false;

    int rank() const { return static_cast<int>(G.cols()); }
};

Skeleton cross_approximate(const EntryOracle& o, double eps, int r_max);

enum class DiagMode { OracleDiag, ZeroRDiag };
AlgebraPlusLowRank assemble(const StructuredMatrix& A, const EntryOracle& o,
                            const Skeleton& sk, DiagMode mode = DiagMode::OracleDiag);
AlgebraPlusLowRank positivity_repair(const AlgebraPlusLowRank& p, double delta);

}  // namespace alp
