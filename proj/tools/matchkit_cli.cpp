// matchkit command-line front end: exact matching counts, capacity bounds,
// graph classification, and entropy curve tables over plain text inputs.
//
// Exit codes: 0 success, 2 command-line parse error, 3 validation error
// (dimensions, ranges, malformed files), 4 non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchkit/matchkit.hpp"

namespace mk = matchkit;
using nlohmann::json;

namespace {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

mk::RationalMatrix load_matrix(const std::string& path) {
    try {
        return mk::parse_matrix(slurp(path));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

mk::SimpleGraph load_graph(const std::string& path) {
    try {
        return mk::parse_graph(slurp(path));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

mk::SymmetricMatrix as_symmetric(const mk::RationalMatrix& m) {
    if (!m.square()) throw ValidationError("matrix must be square and symmetric");
    try {
        return mk::SymmetricMatrix(m.rows(), m.entries());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

void dump_to(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_count(const std::string& matrix_path, std::size_t m, const std::string& mode,
              const std::string& dump, bool as_json) {
    mk::RationalMatrix a = load_matrix(matrix_path);
    if (!dump.empty()) dump_to(dump, mk::format_matrix(a));
    mk::Rat value = mode == "brute" ? mk::brute_force_perm_m(a, m) : mk::perm_m(a, m);
    if (as_json) {
        json out{{"m", m}, {"perm_m", mk::to_string(value)}, {"mode", mode}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << mk::to_string(value) << "\n";
    }
    return 0;
}

int run_haf(const std::string& matrix_path, std::size_t m, const std::string& mode,
            const std::string& dump, bool as_json) {
    mk::RationalMatrix raw = load_matrix(matrix_path);
    if (!dump.empty()) dump_to(dump, mk::format_matrix(raw));
    mk::SymmetricMatrix b = as_symmetric(raw);
    mk::Rat value = mode == "brute" ? mk::brute_force_haf_m(b, m) : mk::haf_m(b, m);
    if (as_json) {
        json out{{"m", m}, {"haf_m", mk::to_string(value)}, {"mode", mode}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << mk::to_string(value) << "\n";
    }
    return 0;
}

int run_matchings(const std::string& graph_path, const std::string& matrix_path,
                  const std::string& dump, bool as_json) {
    mk::MatchingPolynomial phi;
    if (!graph_path.empty()) {
        mk::SimpleGraph g = load_graph(graph_path);
        if (!dump.empty()) dump_to(dump, mk::format_graph(g));
        phi = mk::matching_sequence(g);
    } else {
        mk::RationalMatrix a = load_matrix(matrix_path);
        if (!dump.empty()) dump_to(dump, mk::format_matrix(a));
        phi = mk::matching_sequence(a);
    }
    if (as_json) {
        json seq = json::array();
        for (const mk::Rat& c : phi.coeffs) seq.push_back(mk::to_string(c));
        std::cout << json{{"order", phi.order}, {"phi", seq}}.dump() << "\n";
    } else {
        for (std::size_t k = 0; k < phi.coeffs.size(); ++k)
            std::cout << k << " " << mk::to_string(phi.coeffs[k]) << "\n";
    }
    return 0;
}

int run_capacity(const std::string& matrix_path, std::size_t k, double tol,
                 std::size_t max_iter, const std::string& route, bool as_json) {
    mk::RationalMatrix a = load_matrix(matrix_path);
    if (route == "sinkhorn") {
        if (!a.square()) throw ValidationError("sinkhorn route needs a square matrix");
        if (k != a.rows())
            throw ValidationError("sinkhorn route computes Cap p_{n,B}; use --k n");
        double sink_tol = tol > 0 ? tol : 1e-12;
        std::size_t sink_iter = max_iter > 0 ? max_iter : 10000;
        mk::ScalingResult s;
        try {
            s = mk::sinkhorn_scale(a, sink_tol, sink_iter);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        if (!s.converged)
            throw NonConvergence("sinkhorn residual " + fmt12(s.residual) + " after " +
                                 std::to_string(s.iterations) + " iterations");
        double cap = mk::capacity_via_sinkhorn(a, sink_tol, sink_iter);
        if (as_json) {
            std::cout << json{{"capacity", cap},
                              {"log_capacity", std::log(cap)},
                              {"route", "sinkhorn"},
                              {"residual", s.residual},
                              {"iterations", s.iterations}}
                             .dump()
                      << "\n";
        } else {
            std::cout << fmt12(cap) << "\n";
        }
        return 0;
    }

    mk::CapacityOracle oracle;
    try {
        oracle = mk::p_kA_capacity_oracle(a, k);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    mk::CapacityOptions opt;
    if (tol > 0) opt.tol = tol;
    if (max_iter > 0) opt.max_iter = max_iter;
    mk::CapacityResult res = mk::log_capacity(oracle, opt);
    if (!res.converged && !res.diverged_to_zero)
        throw NonConvergence("capacity solve not converged after " +
                             std::to_string(res.iterations) + " iterations");
    if (as_json) {
        json out{{"capacity", res.capacity()},
                 {"route", "convex"},
                 {"converged", res.converged},
                 {"diverged_to_zero", res.diverged_to_zero},
                 {"iterations", res.iterations}};
        out["log_capacity"] = res.diverged_to_zero ? json() : json(res.log_capacity);
        std::cout << out.dump() << "\n";
    } else {
        std::cout << fmt12(res.capacity()) << "\n";
    }
    return 0;
}

int run_approx_perm(const std::string& matrix_path, std::size_t m) {
    mk::RationalMatrix a = load_matrix(matrix_path);
    mk::PermBounds b;
    try {
        b = mk::approx_perm_m(a, m);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (!b.capacity.converged && !b.capacity.diverged_to_zero && (b.lower > 0 || b.upper > 0))
        throw NonConvergence("capacity solve not converged");
    std::cout << json{{"lower", b.lower}, {"upper", b.upper}}.dump() << "\n";
    return 0;
}

int run_bounds(const std::string& matrix_path, std::size_t m, std::size_t r_opt,
               std::size_t s, bool as_json) {
    mk::RationalMatrix a = load_matrix(matrix_path);
    if (!a.square()) throw ValidationError("bounds: matrix must be square");
    std::size_t n = a.rows();
    if (m < 1 || m > n) throw ValidationError("bounds: m out of range");

    std::size_t max_col_support = 0;
    std::vector<std::size_t> supports(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            if (a(i, j) != 0) ++supports[j];
        max_col_support = std::max(max_col_support, supports[j]);
    }
    std::size_t r = r_opt > 0 ? r_opt : std::max<std::size_t>(1, max_col_support);

    json out;
    out["n"] = n;
    out["m"] = m;
    out["ft"] = mk::to_double(mk::ft_lower_bound(n, m));

    // Generalized bound: capacity of S_m(Ax) with caps = column support sizes.
    bool have_generalized = false;
    double generalized = 0.0;
    std::size_t nonzero_rows = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (a.row_sum(i) != 0) ++nonzero_rows;
    if (nonzero_rows == n) {
        std::vector<std::size_t> caps(n);
        for (std::size_t j = 0; j < n; ++j) caps[j] = std::clamp<std::size_t>(supports[j], 1, m);
        mk::CapacityResult cap = mk::log_capacity(mk::p_kA_capacity_oracle(a, m));
        double cap_value = cap.capacity();
        generalized = mk::generalized_ft_bound(mk::RegularityProfile(n, m, caps), cap_value);
        have_generalized = true;
    }
    out["generalized"] = have_generalized ? json(generalized) : json();

    out["gurvits_schrijver"] =
        (r <= n) ? json(mk::gurvits_schrijver_bound(n, r)) : json();

    bool slack_ok = s >= 1 && m < n && r + s <= n;
    out["slack"] = slack_ok ? json(mk::slack_lower_bound(n, m, r, s)) : json();

    // Exact value when the evaluation count is tame.
    if (n <= 16) out["exact"] = mk::to_string(mk::perm_m(a, m));

    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        auto line = [](const std::string& name, const json& v) {
            std::cout << name << " ";
            if (v.is_null())
                std::cout << "n/a";
            else if (v.is_string())
                std::cout << v.get<std::string>();
            else
                std::cout << fmt12(v.get<double>());
            std::cout << "\n";
        };
        line("ft", out["ft"]);
        line("generalized", out["generalized"]);
        line("gurvits_schrijver", out["gurvits_schrijver"]);
        line("slack", out["slack"]);
        if (out.contains("exact")) line("exact", out["exact"]);
    }
    return 0;
}

int run_classify(const std::string& graph_path, const std::string& dump) {
    mk::SimpleGraph g = load_graph(graph_path);
    if (!dump.empty()) dump_to(dump, mk::format_graph(g));
    mk::MultipartiteClassification c = mk::classify_complete_multipartite(g);
    json classes = json::array();
    for (const auto& cls : c.classes) classes.push_back(cls);
    std::cout << json{{"hyperbolic", c.is_complete_multipartite},
                      {"classes", c.is_complete_multipartite ? classes : json::array()},
                      {"isolated", c.isolated}}
                     .dump()
              << "\n";
    return 0;
}

int run_entropy(std::size_t r, double grid, const std::string& out_path, double include_p) {
    std::vector<mk::EntropyCurveRow> rows;
    try {
        rows = mk::entropy_curve(r, grid, include_p);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (out_path.empty()) {
        mk::write_entropy_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) throw ValidationError("cannot write '" + out_path + "'");
        mk::write_entropy_csv(out, rows);
    }
    return 0;
}

int run_expect(std::size_t n, std::size_t r, std::size_t m, bool exact, std::size_t trials,
               std::uint64_t seed, bool as_json) {
    mk::Rat formula = mk::expected_perm_m(n, r, m);
    json out{{"n", n}, {"r", r}, {"m", m}, {"formula", mk::to_string(formula)}};
    if (exact) {
        mk::Rat value;
        try {
            value = mk::exact_expectation_small(n, r, m);
        } catch (const std::runtime_error& e) {
            throw ValidationError(e.what());
        }
        out["exact"] = mk::to_string(value);
        if (as_json)
            std::cout << out.dump() << "\n";
        else
            std::cout << "formula " << mk::to_string(formula) << "\n"
                      << "exact " << mk::to_string(value) << "\n";
    } else {
        mk::MonteCarloEstimate est;
        try {
            est = mk::monte_carlo_expectation(n, r, m, trials, seed);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        out["mean"] = est.mean;
        out["stderr"] = est.stderr_of_mean;
        out["trials"] = est.trials;
        out["seed"] = seed;
        if (as_json)
            std::cout << out.dump() << "\n";
        else
            std::cout << "formula " << mk::to_string(formula) << " (" << fmt12(mk::to_double(formula))
                      << ")\n"
                      << "mean " << fmt12(est.mean) << "\n"
                      << "stderr " << fmt12(est.stderr_of_mean) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and approximate partial-matching counts"};
    app.require_subcommand(1);

    std::string matrix_path, graph_path, dump_path, mode = "ryser", route = "convex";
    std::string out_path;
    std::size_t m = 1, k = 1, n = 1, r = 1, s = 1, max_iter = 0, trials = 10000;
    double tol = 0, grid = 0.01, include_p = -1;
    std::uint64_t seed = 1;
    bool as_json = false, exact = false;

    auto* count = app.add_subcommand("count", "perm_m of a matrix");
    count->add_option("--matrix", matrix_path)->required();
    count->add_option("--m", m)->required();
    count->add_option("--mode", mode)->check(CLI::IsMember({"ryser", "brute"}));
    count->add_option("--dump", dump_path);
    count->add_flag("--json", as_json);

    auto* haf = app.add_subcommand("haf", "haf_m of a symmetric matrix");
    haf->add_option("--matrix", matrix_path)->required();
    haf->add_option("--m", m)->required();
    haf->add_option("--mode", mode)->check(CLI::IsMember({"ryser", "brute"}));
    haf->add_option("--dump", dump_path);
    haf->add_flag("--json", as_json);

    auto* matchings = app.add_subcommand("matchings", "full matching count sequence");
    auto* mg = matchings->add_option("--graph", graph_path);
    auto* mm = matchings->add_option("--matrix", matrix_path);
    mg->excludes(mm);
    matchings->add_option("--dump", dump_path);
    matchings->add_flag("--json", as_json);

    auto* capacity = app.add_subcommand("capacity", "Cap p_{k,A}");
    capacity->add_option("--matrix", matrix_path)->required();
    capacity->add_option("--k", k)->required();
    capacity->add_option("--tol", tol);
    capacity->add_option("--max-iter", max_iter);
    capacity->add_option("--route", route)->check(CLI::IsMember({"convex", "sinkhorn"}));
    capacity->add_flag("--json", as_json);

    auto* approx = app.add_subcommand("approx-perm", "capacity sandwich bounds on perm_m");
    approx->add_option("--matrix", matrix_path)->required();
    approx->add_option("--m", m)->required();

    auto* bounds = app.add_subcommand("bounds", "lower bound table for perm_m");
    bounds->add_option("--matrix", matrix_path)->required();
    bounds->add_option("--m", m)->required();
    std::size_t r_opt = 0;
    bounds->add_option("--r", r_opt);
    bounds->add_option("--s", s);
    bounds->add_flag("--json", as_json);

    auto* classify = app.add_subcommand("classify", "complete multipartite / hyperbolicity");
    classify->add_option("--graph", graph_path)->required();
    classify->add_option("--dump", dump_path);

    auto* entropy = app.add_subcommand("entropy", "entropy curve CSV");
    entropy->add_option("--r", r)->required();
    entropy->add_option("--grid", grid);
    entropy->add_option("--out", out_path);
    entropy->add_option("--include-p", include_p);

    auto* expect = app.add_subcommand("expect", "expected perm_m over the regular model");
    expect->add_option("--n", n)->required();
    expect->add_option("--r", r)->required();
    expect->add_option("--m", m)->required();
    expect->add_flag("--exact", exact);
    expect->add_option("--trials", trials);
    expect->add_option("--seed", seed);
    expect->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*count) return run_count(matrix_path, m, mode, dump_path, as_json);
        if (*haf) return run_haf(matrix_path, m, mode, dump_path, as_json);
        if (*matchings) {
            if (graph_path.empty() && matrix_path.empty())
                throw ValidationError("matchings: need --graph or --matrix");
            return run_matchings(graph_path, matrix_path, dump_path, as_json);
        }
        if (*capacity) return run_capacity(matrix_path, k, tol, max_iter, route, as_json);
        if (*approx) return run_approx_perm(matrix_path, m);
        if (*bounds) return run_bounds(matrix_path, m, r_opt, s, as_json);
        if (*classify) return run_classify(graph_path, dump_path);
        if (*entropy) return run_entropy(r, grid, out_path, include_p);
        if (*expect) return run_expect(n, r, m, exact, trials, seed, as_json);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
