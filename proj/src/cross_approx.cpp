#include "alp/cross_approx.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <nlohmann/json.hpp>

#include "alp/errors.hpp"

namespace alp {

namespace {

// Adaptive cross with partial pivoting over the masked (off-diagonal,
// computable) part of U*AU.  Masked entries along sampled rows/columns are
// reconstructed by least-squares span fits against the other sampled
// rows/columns; estimates live in a shared per-position store so a row and a
// column crossing the same hole stay consistent.
struct Aca {
    const EntryOracle& o;
    int n;
    double eps;
    int rmax;
    long queries = 0;
    double scale = 0.0;

    std::map<std::pair<int, int>, std::pair<cxd, double>> est;  // value, fit quality
    std::vector<int> rowsI, colsJ;
    std::vector<Vec> rows, cols;
    std::vector<std::vector<int>> rholes, choles;
    std::vector<bool> rowpivot;

    Aca(const EntryOracle& oracle, double eps_, int rmax_)
        : o(oracle), n(oracle.n), eps(eps_), rmax(rmax_) {}

    bool masked(int i, int j) const { return !computable(o, i, j); }

    Vec qrow(int i, std::vector<int>& holes) {
        Vec out = Vec::Zero(n);
        for (int j = 0; j < n; ++j) {
            if (masked(i, j)) holes.push_back(j);
            else { out[j] = entry(o, i, j); ++queries; }
        }
        return out;
    }
    Vec qcol(int j, std::vector<int>& holes) {
        Vec out = Vec::Zero(n);
        for (int i = 0; i < n; ++i) {
            if (masked(i, j)) holes.push_back(i);
            else { out[i] = entry(o, i, j); ++queries; }
        }
        return out;
    }

    void add_row(int i, bool pivot) {
        std::vector<int> holes;
        Vec rr = qrow(i, holes);
        rowsI.push_back(i);
        rows.push_back(std::move(rr));
        rholes.push_back(std::move(holes));
        rowpivot.push_back(pivot);
        scale = std::max(scale, rows.back().cwiseAbs().maxCoeff());
        complete();
    }
    void add_col(int j) {
        std::vector<int> holes;
        Vec cc = qcol(j, holes);
        colsJ.push_back(j);
        cols.push_back(std::move(cc));
        choles.push_back(std::move(holes));
        scale = std::max(scale, cols.back().cwiseAbs().maxCoeff());
        complete();
    }

    void fill() {
        for (size_t q = 0; q < rows.size(); ++q)
            for (int c : rholes[q]) {
                auto it = est.find({rowsI[q], c});
                rows[q][c] = it == est.end() ? cxd(0.0) : it->second.first;
            }
        for (size_t q = 0; q < cols.size(); ++q)
            for (int r : choles[q]) {
                auto it = est.find({r, colsJ[q]});
                cols[q][r] = it == est.end() ? cxd(0.0) : it->second.first;
            }
    }

    void complete_one(std::vector<Vec>& lines, const std::vector<std::vector<int>>& holes,
                      const std::vector<int>& line_idx, bool is_row) {
        for (size_t q = 0; q < lines.size(); ++q) {
            if (holes[q].empty() || lines.size() < 2) continue;
            std::vector<size_t> others;
            for (size_t t = 0; t < lines.size(); ++t)
                if (t != q) others.push_back(t);
            std::vector<bool> bad(n, false);
            for (int c : holes[q]) bad[c] = true;
            for (size_t t : others)
                for (int c : holes[t]) bad[c] = true;
            std::vector<int> idx;
            for (int c = 0; c < n; ++c)
                if (!bad[c]) idx.push_back(c);
            if (idx.empty()) continue;
            Mat A(idx.size(), others.size());
            Vec b(idx.size());
            for (size_t r = 0; r < idx.size(); ++r) {
                b[r] = lines[q][idx[r]];
                for (size_t t = 0; t < others.size(); ++t) A(r, t) = lines[others[t]][idx[r]];
            }
            Vec al = A.completeOrthogonalDecomposition().solve(b);
            double fit = (A * al - b).norm() / std::max(b.norm(), 1e-30);
            if (fit > 1e-6) continue;
            for (int c : holes[q]) {
                cxd v = 0.0;
                for (size_t t = 0; t < others.size(); ++t) v += al[t] * lines[others[t]][c];
                auto key = is_row ? std::make_pair(line_idx[q], c) : std::make_pair(c, line_idx[q]);
                auto it = est.find(key);
                if (it == est.end() || fit <= it->second.second) est[key] = {v, fit};
            }
        }
    }

    void complete() {
        for (int pass = 0; pass < 3; ++pass) {
            fill();
            complete_one(rows, rholes, rowsI, true);
            complete_one(cols, choles, colsJ, false);
        }
        fill();
    }

    void build(std::vector<Vec>& G, std::vector<Vec>& H) const {
        G.clear();
        H.clear();
        std::vector<size_t> pr;
        for (size_t q = 0; q < rowsI.size(); ++q)
            if (rowpivot[q]) pr.push_back(q);
        for (size_t t = 0; t < pr.size() && t < colsJ.size(); ++t) {
            size_t q = pr[t];
            Vec r = rows[q], c = cols[t];
            for (size_t s = 0; s < G.size(); ++s) {
                r -= G[s][rowsI[q]] * H[s];
                c -= H[s][colsJ[t]] * G[s];
            }
            cxd p = r[colsJ[t]];
            if (std::abs(p) <= 1e-14 * scale) break;
            G.push_back(c / p);
            H.push_back(r);
        }
    }

    // residual of stored row q against the current skeleton; candidates
    // exclude holes and already-used columns
    void resid_row(size_t q, const std::vector<Vec>& G, const std::vector<Vec>& H, Vec& res,
                   RVec& cand) const {
        res = rows[q];
        int i = rowsI[q];
        for (size_t s = 0; s < G.size(); ++s) res -= G[s][i] * H[s];
        cand = res.cwiseAbs();
        for (int c : rholes[q]) cand[c] = -1.0;
        for (int t : colsJ) cand[t] = -1.0;
    }

    Skeleton run() {
        Skeleton out;
        std::vector<Vec> G, H;
        double fro2 = 0.0;
        double last_stop = 0.0;
        bool have_prev = false;
        Vec prev;
        while (static_cast<int>(colsJ.size()) < rmax) {
            int k = static_cast<int>(colsJ.size());
            int i = -1;
            if (!have_prev) {
                i = 0;
                while (std::find(rowsI.begin(), rowsI.end(), i) != rowsI.end()) ++i;
            } else {
                RVec cand = prev.cwiseAbs();
                for (int t : rowsI) cand[t] = -1.0;
                int best = 0;
                cand.maxCoeff(&best);
                if (cand[best] < 0) break;
                i = best;
            }
            add_row(i, true);
            build(G, H);
            Vec res;
            RVec cand;
            resid_row(rows.size() - 1, G, H, res, cand);
            int j = 0;
            cand.maxCoeff(&j);
            cxd p = res[j];
            double thr = eps * std::sqrt(std::max(fro2, 0.0));
            last_stop = std::abs(p) * (n - k);
            if (cand[j] < 0 || std::abs(p) * (n - k) <= thr) {
                // verify with up to 3 fresh rows before accepting the stop
                rowpivot.back() = false;
                bool accept = true;
                int tried = 0, iv = 0;
                while (tried < 3 && iv < n) {
                    if (std::find(rowsI.begin(), rowsI.end(), iv) != rowsI.end()) { ++iv; continue; }
                    add_row(iv, false);
                    build(G, H);
                    Vec res2;
                    RVec cand2;
                    resid_row(rows.size() - 1, G, H, res2, cand2);
                    int j2 = 0;
                    cand2.maxCoeff(&j2);
                    cxd p2 = res2[j2];
                    ++tried;
                    ++iv;
                    if (cand2[j2] >= 0 && std::abs(p2) * (n - k) > thr &&
                        std::abs(p2) > 1e-13 * scale) {
                        rowpivot.back() = true;  // false stop: resume from this row
                        res = res2;
                        cand = cand2;
                        cand.maxCoeff(&j);
                        p = res[j];
                        accept = false;
                        break;
                    }
                }
                if (accept) {
                    last_stop = std::abs(p) * (n - k);
                    break;
                }
            }
            add_col(j);
            build(G, H);
            if (static_cast<int>(G.size()) < k + 1) break;
            const Vec& g = G.back();
            const Vec& h = H.back();
            fro2 += g.squaredNorm() * h.squaredNorm();
            for (size_t t = 0; t + 1 < G.size(); ++t)
                fro2 += 2.0 * std::abs(G[t].dot(g) * h.dot(H[t]));
            prev = cols.back();
            for (size_t t = 0; t + 1 < G.size(); ++t) prev -= H[t][colsJ.back()] * G[t];
            have_prev = true;
        }
        // patch pass: sample the crossing row of any sampled-column hole that
        // never received an accepted estimate
        if (!colsJ.empty()) {
            for (size_t q = 0; q < cols.size(); ++q)
                for (int r : choles[q])
                    if (!est.count({r, colsJ[q]}) &&
                        std::find(rowsI.begin(), rowsI.end(), r) == rowsI.end())
                        add_row(r, false);
        }
        build(G, H);
        int r = static_cast<int>(G.size());
        out.G = Mat::Zero(n, r);
        out.H = Mat::Zero(n, r);
        for (int t = 0; t < r; ++t) {
            out.G.col(t) = G[t];
            out.H.col(t) = H[t].conjugate();  // store so R_hat = G H*
        }
        out.queries = queries;
        out.residual_estimate = last_stop;
        out.budget_exhausted = static_cast<int>(colsJ.size()) >= rmax && last_stop > 0.0 &&
                               last_stop > eps * std::sqrt(std::max(fro2, 1e-300));
        return out;
    }
};

std::vector<std::vector<std::array<double, 2>>> mat_to_pairs(const Mat& M) {
    std::vector<std::vector<std::array<double, 2>>> out(M.cols());
    for (int c = 0; c < M.cols(); ++c) {
        out[c].resize(M.rows());
        for (int r = 0; r < M.rows(); ++r) out[c][r] = {M(r, c).real(), M(r, c).imag()};
    }
    return out;
}

Mat pairs_to_mat(const nlohmann::json& j, int n) {
    Mat M(n, j.size());
    for (size_t c = 0; c < j.size(); ++c)
        for (int r = 0; r < n; ++r) M(r, c) = cxd(j[c][r][0], j[c][r][1]);
    return M;
}

}  // namespace

Skeleton cross_approximate(const EntryOracle& o, double eps, int r_max) {
    if (eps <= 0 || r_max < 1) throw ConfigError("cross_approximate needs eps > 0, r_max >= 1");
    Aca a(o, eps, r_max);
    return a.run();
}

AlgebraPlusLowRank assemble(const StructuredMatrix& A, const EntryOracle& o, const Skeleton& sk,
                            DiagMode mode) {
    AlgebraPlusLowRank p;
    p.algebra = o.algebra;
    p.G = sk.G;
    p.H = sk.H;
    p.achieved_rank = sk.rank();
    p.skeleton_in_preconditioner = true;
    const int n = o.n;
    if (mode == DiagMode::OracleDiag) {
        p.d = diag_entries(A, o.algebra);
        for (int i = 0; i < n; ++i) {
            cxd rd = 0.0;
            for (int t = 0; t < sk.rank(); ++t) rd += sk.G(i, t) * std::conj(sk.H(i, t));
            p.d[i] -= rd;
        }
    } else {
        if (o.algebra.family == AlgebraId::Family::PhiCirculant && A.kind == Kind::Toeplitz)
            p.d = transformed_toeplitz_diag(A, o.algebra.phi);
        else
            p.d = diag_entries(A, o.algebra);
    }
    return p;
}

AlgebraPlusLowRank positivity_repair(const AlgebraPlusLowRank& p, double delta) {
    AlgebraPlusLowRank out = p;
    out.corrections = 0;
    for (int i = 0; i < out.n(); ++i)
        if (out.d[i].real() < delta) {
            out.d[i] = delta;
            ++out.corrections;
        }
    return out;
}

std::string precond_to_json(const AlgebraPlusLowRank& p) {
    nlohmann::json j;
    j["algebra"] = p.algebra.token();
    std::vector<std::array<double, 2>> d(p.d.size());
    for (int i = 0; i < p.d.size(); ++i) d[i] = {p.d[i].real(), p.d[i].imag()};
    j["d"] = d;
    j["G"] = mat_to_pairs(p.G);
    j["H"] = mat_to_pairs(p.H);
    j["epsilon_target"] = p.epsilon_target;
    j["achieved_rank"] = p.achieved_rank;
    j["corrections"] = p.corrections;
    j["left_J"] = p.left_J;
    j["skeleton_in_preconditioner"] = p.skeleton_in_preconditioner;
    return j.dump(2);
}

AlgebraPlusLowRank precond_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    AlgebraPlusLowRank p;
    p.algebra = AlgebraId::parse(j.at("algebra"));
    const auto& dj = j.at("d");
    p.d.resize(dj.size());
    for (size_t i = 0; i < dj.size(); ++i) p.d[i] = cxd(dj[i][0], dj[i][1]);
    p.G = pairs_to_mat(j.at("G"), p.n());
    p.H = pairs_to_mat(j.at("H"), p.n());
    p.epsilon_target = j.at("epsilon_target");
    p.achieved_rank = j.at("achieved_rank");
    p.corrections = j.at("corrections");
    p.left_J = j.value("left_J", false);
    p.skeleton_in_preconditioner = j.value("skeleton_in_preconditioner", true);
    return p;
}

}  // namespace alp
