#pragma once
#include <string>

#include "alp/algebras.hpp"

namespace alp {

// P = U diag(d) U*, R = U (G H*) U*.  skeleton_in_preconditioner tells the
// solver whether R belongs to the preconditioner (cross-approximation output)
// or documents the remainder A - P (explicit splittings).
struct AlgebraPlusLowRank {
    AlgebraId algebra;
    Vec d;
    Mat G, H;
    double epsilon_target = 0.0;
    int achieved_rank = 0;
    int corrections = 0;
    bool left_J = false;  // Hankel splittings: the operator is J(P + R)
    bool skeleton_in_preconditioner = true;
    bool kronecker_warning = false;  // rational Hankel symbols

    int n() const { return static_cast<int>(d.size()); }
};

std::string precond_to_json(const AlgebraPlusLowRank& p);
AlgebraPlusLowRank precond_from_json(const std::string& text);

}  // namespace alp
