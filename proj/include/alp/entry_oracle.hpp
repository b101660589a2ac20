#pragma once
#include <memory>
#include <vector>

#include "alp/displacement.hpp"

namespace alp {

// One ladder: transformed dyads (U*x_k, U*y_k) plus generator eigenvalues.
struct Ladder {
    std::vector<std::pair<Vec, Vec>> hat;
    Vec lambda;
};

struct EntryOracle {
    AlgebraId algebra;
    int n = 0;
    std::vector<Ladder> ladders;

    // Hankel case for phi = +-1: answer through the oracle of T = JH with a
    // phase table and a row remap.
    bool reduced = false;
    std::vector<int> remap;
    Vec phase;
    std::shared_ptr<EntryOracle> inner;
    Vec inner_diag;  // diag of the transformed inner Toeplitz, closed form
};

EntryOracle build(const StructuredMatrix& A, const AlgebraId& id);
cxd entry(const EntryOracle& o, int i, int j);
bool computable(const EntryOracle& o, int i, int j);
std::vector<std::pair<int, int>> uncomputable_positions(const AlgebraId& id, int n);
Vec diag_entries(const StructuredMatrix& A, const AlgebraId& id);
// diag of F_phi* T F_phi in closed form, O(n log n)
Vec transformed_toeplitz_diag(const StructuredMatrix& T, cxd phi);

}  // namespace alp
