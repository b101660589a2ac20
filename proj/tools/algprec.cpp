#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "alp/cross_approx.hpp"
#include "alp/entry_oracle.hpp"
#include "alp/errors.hpp"
#include "alp/solvers.hpp"
#include "alp/splittings.hpp"
#include "alp/structured.hpp"

using nlohmann::json;
using namespace alp;

namespace {

cxd jcx(const json& j) {
    if (j.is_number()) return cxd(j.get<double>(), 0.0);
    return cxd(j.at(0).get<double>(), j.at(1).get<double>());
}

std::vector<cxd> jcxvec(const json& j) {
    std::vector<cxd> out;
    for (const auto& e : j) out.push_back(jcx(e));
    return out;
}

Vec jvec(const json& j) {
    Vec out(j.size());
    for (size_t i = 0; i < j.size(); ++i) out[i] = jcx(j[i]);
    return out;
}

struct Config {
    json matrix;
    std::string algebra = "circ:1,0";
    std::string method = "blackdot";
    double epsilon = 1e-8;
    int r_max = 64;
    std::string solver = "cg";
    double tol = 1e-10;
    int maxit = 500;
    std::vector<int> sizes;
    unsigned long long seed = 0;
    bool record_wall_time = false;
    std::string output;
    json raw;
};

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (j.value("schema", 0) != 1) throw ConfigError("expected \"schema\": 1");
    Config c;
    c.raw = j;
    c.matrix = j.value("matrix", json::object());
    c.algebra = j.value("algebra", c.algebra);
    c.method = j.value("method", c.method);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.r_max = j.value("r_max", c.r_max);
    c.solver = j.value("solver", c.solver);
    c.tol = j.value("tol", c.tol);
    c.maxit = j.value("maxit", c.maxit);
    c.seed = j.value("seed", 0ull);
    c.record_wall_time = j.value("record_wall_time", false);
    c.output = j.value("output", std::string());
    if (j.contains("sizes"))
        for (const auto& e : j["sizes"]) c.sizes.push_back(e.get<int>());
    if (c.sizes.empty()) throw ConfigError("sizes must be nonempty");
    if (c.epsilon <= 0) throw ConfigError("epsilon must be positive");
    std::sort(c.sizes.begin(), c.sizes.end());
    return c;
}

SymbolSpec parse_symbol(const json& s) {
    SymbolSpec spec;
    std::string v = s.value("variant", "kms");
    if (v == "zeta")
        spec.variant = SymbolSpec::Variant::ZetaLambda;
    else if (v == "kms")
        spec.variant = SymbolSpec::Variant::KmsKappa;
    else if (v == "rational")
        spec.variant = SymbolSpec::Variant::RationalPQ;
    else if (v == "power")
        spec.variant = SymbolSpec::Variant::PowerAlpha;
    else if (v == "log")
        spec.variant = SymbolSpec::Variant::LogSingularity;
    else if (v == "coefficients")
        spec.variant = SymbolSpec::Variant::FourierCoefficients;
    else
        throw ConfigError("unknown symbol variant " + v);
    spec.lambda = s.value("lambda", 0.0);
    spec.alpha = s.value("alpha", 1.0);
    if (s.contains("z0")) spec.z0 = jcx(s["z0"]);
    if (s.contains("p_coeffs")) spec.p_coeffs = jcxvec(s["p_coeffs"]);
    if (s.contains("q_roots")) spec.q_roots = jcxvec(s["q_roots"]);
    if (s.contains("coeffs")) spec.coeffs = jcxvec(s["coeffs"]);
    return spec;
}

StructuredMatrix build_matrix(const Config& c, int n) {
    const json& m = c.matrix;
    std::string kind = m.value("kind", "toeplitz");
    if (m.contains("symbol")) {
        SymbolSpec spec = parse_symbol(m["symbol"]);
        int quad = m.value("quadrature_points", 4 * n);
        if (kind == "toeplitz") return toeplitz_from_symbol(spec, n, quad);
        if (kind == "hankel") return hankel_from_symbol(spec, n, quad);
        if (kind == "toeplitz_plus_hankel")
            return add(toeplitz_from_symbol(spec, n, quad), hankel_from_symbol(spec, n, quad));
        throw ConfigError("unknown matrix kind " + kind);
    }
    if (m.contains("identity") && m["identity"].get<bool>()) {
        Vec a = Vec::Zero(n), b = Vec::Zero(n);
        a[0] = b[0] = 1.0;
        return toeplitz(a, b);
    }
    // explicit vectors fix n
    StructuredMatrix A = matrix_from_json(m.dump());
    if (A.n != n) throw ConfigError("explicit matrix size disagrees with requested n");
    return A;
}

AlgebraPlusLowRank build_precond(const Config& c, const StructuredMatrix& A, int n) {
    AlgebraId id = AlgebraId::parse(c.algebra);
    if (c.method == "blackdot") {
        EntryOracle o = build(A, id);
        Skeleton sk = cross_approximate(o, c.epsilon, c.r_max);
        AlgebraPlusLowRank pr = assemble(A, o, sk);
        pr.epsilon_target = c.epsilon;
        return pr;
    }
    if (c.method.rfind("explicit:", 0) != 0)
        throw ConfigError("unknown method " + c.method);
    std::string name = c.method.substr(9);
    json sym = c.matrix.value("symbol", json::object());
    double lambda = sym.value("lambda", 0.0);
    cxd phi = id.family == AlgebraId::Family::PhiCirculant ? id.phi : cxd(1.0);
    if (name == "z") return precond_Z(n, lambda, phi);
    if (name == "kms") return precond_KMS(n, lambda, phi);
    if (name == "rational")
        return precond_rational(jcxvec(sym.value("p_coeffs", json::array())),
                                jcxvec(sym.value("q_roots", json::array())), n, phi);
    if (name == "power")
        return precond_power(n, c.raw.value("power_p", int(sym.value("alpha", 1.0))), phi,
                             c.raw.value("symmetric", false));
    if (name == "log") return precond_log(n, sym.contains("z0") ? jcx(sym["z0"]) : cxd(1.0),
                                          phi, c.epsilon);
    if (name == "generalized_kms") {
        std::vector<GenKmsTerm> terms;
        for (const auto& t : c.raw.value("terms", json::array())) {
            GenKmsTerm g;
            g.gamma = t.value("gamma", 1.0);
            g.lambda = t.value("lambda", 0.0);
            for (const auto& e : t.value("f_coeffs", json::array()))
                g.f_coeffs.push_back(e.get<double>());
            terms.push_back(g);
        }
        return precond_generalized_kms(terms, n, phi, c.epsilon);
    }
    if (name == "hankel") return precond_hankel(parse_symbol(sym), n, phi, c.epsilon);
    if (name == "hartley_kms") {
        if (id.family != AlgebraId::Family::Hartley)
            throw ConfigError("hartley_kms needs a hartley:<k> algebra token");
        return precond_hartley_kms(n, lambda, id.k);
    }
    throw ConfigError("unknown explicit splitting " + name);
}

Vec deterministic_rhs(const Config& c, int n) {
    std::mt19937_64 rng(c.seed * 1000003ull + static_cast<unsigned long long>(n));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = dist(rng);
    return b;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

int cmd_build(const Config& c, const std::string& out_path) {
    int n = c.sizes.front();
    StructuredMatrix A = build_matrix(c, n);
    AlgebraPlusLowRank pr = build_precond(c, A, n);
    write_out(out_path, precond_to_json(pr) + "\n");
    return 0;
}

int cmd_bench(const Config& c, const std::string& out_path, int dense_cap) {
    std::ostringstream csv;
    csv << "n,method,achieved_rank,iterations,outliers,wall_time\n";
    bool all_converged = true;
    std::string pending_error;
    for (int n : c.sizes) {
        try {
            StructuredMatrix A = build_matrix(c, n);
            AlgebraPlusLowRank pr;
            bool use_pr = c.method != "none";
            if (use_pr) pr = build_precond(c, A, n);
            Vec b = deterministic_rhs(c, n);
            SolveReport rep = c.solver == "gmres"
                                  ? gmres(A, use_pr ? &pr : nullptr, b, c.tol, c.maxit)
                                  : pcg(A, use_pr ? &pr : nullptr, b, c.tol, c.maxit);
            all_converged = all_converged && rep.converged;
            int outliers = -1;
            if (use_pr && n <= dense_cap)
                outliers = cluster_report(A, pr, c.epsilon, dense_cap).outliers;
            char wt[32];
            std::snprintf(wt, sizeof(wt), "%.3f", c.record_wall_time ? rep.wall_time : 0.0);
            csv << n << ',' << c.method << ',' << (use_pr ? pr.achieved_rank : 0) << ','
                << rep.iterations << ',' << outliers << ',' << wt << '\n';
        } catch (const Error& e) {
            // flush partial results, keep going with the remaining sizes
            pending_error = e.what();
            std::cerr << "n=" << n << ": " << e.what() << "\n";
        }
    }
    write_out(out_path, csv.str());
    if (!pending_error.empty()) throw UnsupportedCombination(pending_error);
    return all_converged ? 0 : 1;
}

int cmd_spectrum(const Config& c, const std::string& out_path, int dense_cap) {
    int n = c.sizes.front();
    if (n > dense_cap) throw ConfigError("n exceeds dense cap");
    StructuredMatrix A = build_matrix(c, n);
    AlgebraPlusLowRank pr = build_precond(c, A, n);
    Mat M(n, n);
    Vec e = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        M.col(j) = apply_inverse(pr, matvec(A, e));
        e[j] = 0.0;
    }
    Eigen::ComplexEigenSolver<Mat> es(M, false);
    std::vector<cxd> lam(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(lam.begin(), lam.end(), [](cxd x, cxd y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    std::ostringstream csv;
    csv << "index,re,im\n";
    for (int i = 0; i < n; ++i) {
        char row[96];
        std::snprintf(row, sizeof(row), "%d,%.12g,%.12g\n", i, lam[i].real(), lam[i].imag());
        csv << row;
    }
    write_out(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebra-plus-low-rank preconditioner toolkit"};
    app.require_subcommand(1);
    std::string config_path, out_path;
    int dense_cap = 4096;
    long long seed_override = -1;
    int threads = 1;
    app.add_option("--dense-cap", dense_cap, "dense diagnostics size cap");
    app.add_option("--threads", threads, "worker threads");
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "campaign config JSON")->required();
        sub->add_option("--out", out_path, "output path (stdout when omitted)");
        sub->add_option("--seed", seed_override, "override config seed");
    };
    auto* sb = app.add_subcommand("build", "construct a preconditioner and write it as JSON");
    auto* sn = app.add_subcommand("bench", "solve across sizes, emit a CSV report");
    auto* ss = app.add_subcommand("spectrum", "eigenvalues of the preconditioned operator");
    add_common(sb);
    add_common(sn);
    add_common(ss);
    CLI11_PARSE(app, argc, argv);

    try {
        Config c = load_config(config_path);
        if (seed_override >= 0) c.seed = static_cast<unsigned long long>(seed_override);
        if (out_path.empty()) out_path = c.output;
        if (sb->parsed()) return cmd_build(c, out_path);
        if (sn->parsed()) return cmd_bench(c, out_path, dense_cap);
        return cmd_spectrum(c, out_path, dense_cap);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NotConverged& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
