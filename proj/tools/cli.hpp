#ifndef METDIM_TOOLS_CLI_HPP
#define METDIM_TOOLS_CLI_HPP

#include <metdim/metdim.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace metdim::cli {

enum ExitCode : int { ok = 0, verified_false = 1, usage_error = 2 };

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

/// A graph loaded for a command, with its clique factors when it came from --tensor.
struct Input {
    Graph graph;
    std::optional<CliqueFactors> factors;

    auto distances() const -> DistanceMatrix {
        return factors ? tensor_distances(*factors) : all_pairs_distances(graph);
    }
};

inline auto load_input(const std::string& path, const std::vector<std::uint32_t>& tensor) -> Input {
    if (!path.empty() && !tensor.empty())
        throw UsageError("give either a graph file or --tensor, not both");
    if (!tensor.empty()) {
        CliqueFactors f(tensor);
        return Input{tensor_of_cliques(f), f};
    }
    if (path.empty())
        throw UsageError("no input graph: pass a file or --tensor");
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    return Input{read_edge_list(in), std::nullopt};
}

inline auto coordinate_json(Vertex v, const std::optional<CliqueFactors>& f) -> json {
    if (!f)
        return json::array({v});
    return json(coords_of(v, *f).values);
}

/// 1-based label: (u_i,v_j) for two factors, (c_1,...,c_t) otherwise.
inline auto label(Vertex v, const std::optional<CliqueFactors>& f) -> std::string {
    if (!f)
        return std::to_string(v);
    auto c = coords_of(v, *f);
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ",";
        if (c.size() == 2)
            s += (i == 0 ? "u_" : "v_");
        s += std::to_string(c[i] + 1);
    }
    return s + ")";
}

inline auto set_json(const OrderedVertexSet& w, const std::optional<CliqueFactors>& f, json& report,
                     const std::string& key) -> void {
    json coords = json::array(), ids = json::array(), labels = json::array();
    for (auto v : w) {
        coords.push_back(coordinate_json(v, f));
        ids.push_back(v);
        labels.push_back(label(v, f));
    }
    report[key] = coords;
    report[key + "_ids"] = ids;
    report[key + "_labels"] = labels;
}

/// Accepts an array whose entries are flat ids or coordinate arrays.
inline auto parse_set(const std::string& text, const Input& input) -> OrderedVertexSet {
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("malformed set JSON: ") + e.what());
    }
    if (!parsed.is_array())
        throw UsageError("set must be a JSON array");
    const auto n = input.graph.vertex_count();
    std::vector<Vertex> ids;
    for (const auto& item : parsed) {
        if (item.is_number_unsigned()) {
            auto v = item.get<std::uint64_t>();
            if (v >= n)
                throw UsageError("vertex id " + std::to_string(v) + " out of range");
            ids.push_back(static_cast<Vertex>(v));
        } else if (item.is_array()) {
            std::vector<std::uint32_t> c;
            for (const auto& x : item) {
                if (!x.is_number_unsigned())
                    throw UsageError("coordinates must be non-negative integers");
                c.push_back(x.get<std::uint32_t>());
            }
            try {
                if (input.factors)
                    ids.push_back(flat_index(TensorCoord{c}, *input.factors));
                else if (c.size() == 1 && c[0] < n)
                    ids.push_back(c[0]);
                else
                    throw std::out_of_range("bad coordinate");
            } catch (const std::out_of_range&) {
                throw UsageError("coordinate " + item.dump() + " out of range");
            }
        } else {
            throw UsageError("set entries must be ids or coordinate arrays");
        }
    }
    try {
        return OrderedVertexSet(std::move(ids));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline auto verify_or_throw(const DistanceMatrix& dm, const OrderedVertexSet& w) -> void {
    auto verdict = is_resolving(dm, w);
    if (!verdict.resolving())
        throw ConstructionFailed("certificate rejected", *verdict.unresolved);
}

inline auto cmd_gen(std::uint32_t clique, const std::vector<std::uint32_t>& tensor, std::uint32_t bmm,
                    const std::string& out_path, std::ostream& out) -> int {
    const int chosen = (clique != 0) + !tensor.empty() + (bmm != 0);
    if (chosen != 1)
        throw UsageError("choose exactly one of --clique, --tensor, --bmm with a positive size");
    Graph g;
    try {
        if (clique)
            g = build_clique(clique);
        else if (!tensor.empty())
            g = tensor_of_cliques(CliqueFactors(tensor));
        else
            g = build_bipartite_minus_matching(bmm);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (out_path.empty() || out_path == "-") {
        write_edge_list(out, g);
    } else {
        std::ofstream file(out_path);
        if (!file)
            throw UsageError("cannot write " + out_path);
        write_edge_list(file, g);
    }
    return ok;
}

enum class DimMethod { exact, greedy, formula };

inline auto cmd_dim(const Input& input, DimMethod method, unsigned threads, std::ostream& out) -> int {
    json report;
    report["n"] = input.graph.vertex_count();
    if (input.factors)
        report["factors"] = std::vector<std::uint32_t>(input.factors->sizes().begin(), input.factors->sizes().end());

    if (method == DimMethod::formula) {
        if (!input.factors || input.factors->factor_count() != 2)
            throw UsageError("--formula needs --tensor with exactly two factors");
        report["method"] = "formula";
        auto m = input.factors->size(0), n = input.factors->size(1);
        auto value = dim_formula(m, n);
        report["case"] = to_string(classify(m, n).kind);
        if (value.disconnected) {
            report["dim"] = nullptr;
            report["disconnected"] = true;
        } else {
            auto w = construct_resolving(m, n);
            verify_or_throw(input.distances(), w);
            report["dim"] = value.dim;
            set_json(w, input.factors, report, "resolving_set");
            report["verified"] = true;
        }
        out << report.dump() << '\n';
        return ok;
    }

    const auto dm = input.distances();
    report["method"] = method == DimMethod::exact ? "exact" : "greedy";
    if (!dm.connected()) {
        report["dim"] = nullptr;
        report["disconnected"] = true;
        out << report.dump() << '\n';
        return ok;
    }
    OrderedVertexSet w;
    if (method == DimMethod::exact) {
        SolverOptions options;
        options.threads = threads;
        auto result = exact_metric_dimension(dm, options);
        w = result.certificate;
        report["nodes"] = result.nodes;
    } else {
        w = greedy_resolving_set(dm);
    }
    verify_or_throw(dm, w);
    report["dim"] = w.size();
    set_json(w, input.factors, report, "resolving_set");
    report["verified"] = true;
    out << report.dump() << '\n';
    return ok;
}

inline auto cmd_verify(const Input& input, const std::string& set_text, std::ostream& out) -> int {
    auto w = parse_set(set_text, input);
    auto verdict = is_resolving(input.distances(), w);
    json report;
    set_json(w, input.factors, report, "set");
    if (verdict.resolving()) {
        report["status"] = "resolving";
        out << report.dump() << '\n';
        return ok;
    }
    report["status"] = "unresolved";
    OrderedVertexSet pair{verdict.unresolved->first, verdict.unresolved->second};
    set_json(pair, input.factors, report, "pair");
    out << report.dump() << '\n';
    return verified_false;
}

inline auto cmd_construct(const std::vector<std::uint32_t>& tensor, std::ostream& out) -> int {
    if (tensor.empty())
        throw UsageError("construct needs --tensor");
    CliqueFactors f = [&] {
        try {
            return CliqueFactors(tensor);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    json report;
    report["factors"] = tensor;
    report["n"] = f.vertex_count();
    OrderedVertexSet w;
    if (f.factor_count() == 2) {
        auto value = dim_formula(f.size(0), f.size(1));
        report["case"] = to_string(classify(f.size(0), f.size(1)).kind);
        if (value.disconnected) {
            report["disconnected"] = true;
            out << report.dump() << '\n';
            return ok;
        }
        w = construct_resolving(f.size(0), f.size(1));
        report["formula"] = value.dim;
    } else if (f.factor_count() >= 3 && f.all_at_least(3)) {
        auto c = upper_bound_construct_t(f);
        w = c.set;
        report["case"] = "product_upper_bound";
        report["drop_first_size"] = c.drop_first_size;
        report["drop_last_size"] = c.drop_last_size;
    } else {
        throw UsageError("construct covers two factors, or three or more factors each at least 3");
    }
    report["size"] = w.size();
    set_json(w, f, report, "resolving_set");
    report["verified"] = true;
    out << report.dump() << '\n';
    return ok;
}

inline auto cmd_bounds(const std::vector<std::uint32_t>& tensor, std::size_t exact_up_to, unsigned threads,
                       std::ostream& out) -> int {
    if (tensor.empty())
        throw UsageError("bounds needs --tensor");
    CliqueFactors f = [&] {
        try {
            return CliqueFactors(tensor);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const json not_applicable = "not applicable";
    json report;
    report["factors"] = tensor;
    report["n"] = f.vertex_count();
    const bool all3 = f.all_at_least(3);
    const bool multi = f.factor_count() >= 3;
    report["corollary_lower"] = all3 ? json(lower_bound_corollary(f)) : not_applicable;
    report["subproduct_lower"] = all3 && multi ? json(lower_bound_subproduct(f)) : not_applicable;
    if (all3 && multi) {
        auto c = upper_bound_construct_t(f);
        report["construction_upper"] = c.set.size();
        report["construction_verified"] = true;
        report["formula_upper"] = upper_bound_value_t(f);
    } else {
        report["construction_upper"] = not_applicable;
        report["formula_upper"] = not_applicable;
    }
    if (f.factor_count() == 2) {
        auto value = dim_formula(f.size(0), f.size(1));
        report["dim_formula"] = value.disconnected ? json(nullptr) : json(value.dim);
    }
    if (f.vertex_count() <= exact_up_to) {
        auto dm = tensor_distances(f);
        SolverOptions options;
        options.threads = threads;
        auto result = exact_metric_dimension(dm, options);
        if (result.disconnected) {
            report["exact"] = nullptr;
            report["disconnected"] = true;
        } else {
            verify_or_throw(dm, result.certificate);
            report["exact"] = result.dim;
        }
    } else {
        report["exact"] = nullptr;
    }
    out << report.dump() << '\n';
    return ok;
}

struct TableRow {
    std::uint32_t m, n;
    std::optional<std::size_t> formula; ///< empty: disconnected
    std::optional<std::size_t> construction_size;
    bool verified = false;
    bool exact_computed = false;
    std::optional<std::size_t> exact; ///< empty with exact_computed: disconnected
    bool agree = false;
};

inline auto table_row(std::uint32_t m, std::uint32_t n, std::size_t exact_up_to, unsigned threads) -> TableRow {
    TableRow row;
    row.m = m;
    row.n = n;
    auto value = dim_formula(m, n);
    if (!value.disconnected) {
        row.formula = value.dim;
        try {
            auto w = construct_resolving(m, n);
            row.construction_size = w.size();
            row.verified = true;
        } catch (const ConstructionFailed&) {
            row.verified = false;
        }
    }
    const CliqueFactors f({m, n});
    if (f.vertex_count() <= exact_up_to) {
        SolverOptions options;
        options.threads = threads;
        auto result = exact_metric_dimension(tensor_distances(f), options);
        row.exact_computed = true;
        if (!result.disconnected)
            row.exact = result.dim;
    }
    if (value.disconnected)
        row.agree = !row.exact_computed || !row.exact;
    else
        row.agree = row.verified && row.construction_size == row.formula && (!row.exact_computed || row.exact == row.formula);
    return row;
}

inline auto cmd_table(std::uint32_t max_m, std::uint32_t max_n, std::size_t exact_up_to, unsigned threads,
                      std::ostream& out) -> int {
    if (max_m > max_n)
        throw UsageError("--max-m must not exceed --max-n");
    out << "m,n,formula,construction_size,verified,exact,agree\n";
    auto cell = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
    for (std::uint32_t m = 2; m <= max_m; ++m)
        for (std::uint32_t n = m; n <= max_n; ++n) {
            auto row = table_row(m, n, exact_up_to, threads);
            out << m << ',' << n << ',' << (row.formula ? cell(row.formula) : "disconnected") << ','
                << cell(row.construction_size) << ',' << (row.formula ? (row.verified ? "true" : "false") : "") << ','
                << (row.exact_computed ? (row.exact ? cell(row.exact) : "disconnected") : "") << ','
                << (row.agree ? "true" : "false") << '\n';
        }
    return ok;
}

/// Runs one CLI invocation. args excludes the program name.
inline auto run(std::vector<std::string> args, std::ostream& out, std::ostream& err) -> int {
    CLI::App app{"Metric dimension of graphs and of tensor products of cliques"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "Worker threads for the exact solver")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Reserved; nothing is randomized");

    std::uint32_t clique = 0, bmm = 0;
    std::vector<std::uint32_t> tensor;
    std::string out_path, graph_path, set_text;
    auto add_tensor = [&](CLI::App* sub) {
        sub->add_option("--tensor", tensor, "Clique sizes of a tensor product, e.g. 3,4")->delimiter(',');
    };

    auto* gen = app.add_subcommand("gen", "Write a graph in edge-list format");
    gen->add_option("--clique", clique, "Complete graph K_n");
    add_tensor(gen);
    gen->add_option("--bmm", bmm, "K_{n,n} minus a perfect matching");
    gen->add_option("-o,--out", out_path, "Output file (default stdout)");

    bool exact = false, greedy = false, formula = false;
    auto* dim = app.add_subcommand("dim", "Metric dimension as a JSON report");
    dim->add_option("graph", graph_path, "Edge-list file");
    add_tensor(dim);
    auto* exact_flag = dim->add_flag("--exact", exact, "Exact branch-and-bound (default)");
    auto* greedy_flag = dim->add_flag("--greedy", greedy, "Greedy upper bound");
    auto* formula_flag = dim->add_flag("--formula", formula, "Closed form for two cliques");
    exact_flag->excludes(greedy_flag)->excludes(formula_flag);
    greedy_flag->excludes(formula_flag);

    auto* verify = app.add_subcommand("verify", "Check whether a vertex set is resolving");
    verify->add_option("graph", graph_path, "Edge-list file");
    add_tensor(verify);
    verify->add_option("--set", set_text, "JSON array of ids or coordinate tuples")->required();

    auto* construct = app.add_subcommand("construct", "Closed-form resolving set for a product of cliques");
    add_tensor(construct);

    std::size_t exact_up_to = 36;
    auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds for a product of cliques");
    add_tensor(bounds);
    bounds->add_option("--exact-up-to", exact_up_to, "Run the exact solver up to this many vertices")->capture_default_str();

    std::uint32_t max_m = 6, max_n = 6;
    std::size_t table_exact = 0;
    auto* table = app.add_subcommand("table", "CSV of formula, construction and exact values for K_m x K_n");
    table->add_option("--max-m", max_m, "Largest m")->capture_default_str();
    table->add_option("--max-n", max_n, "Largest n")->capture_default_str();
    table->add_option("--exact-up-to", table_exact, "Run the exact solver up to this many vertices")->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*gen)
            return cmd_gen(clique, tensor, bmm, out_path, out);
        if (*dim) {
            auto method = greedy ? DimMethod::greedy : formula ? DimMethod::formula : DimMethod::exact;
            return cmd_dim(load_input(graph_path, tensor), method, threads, out);
        }
        if (*verify)
            return cmd_verify(load_input(graph_path, tensor), set_text, out);
        if (*construct)
            return cmd_construct(tensor, out);
        if (*bounds)
            return cmd_bounds(tensor, exact_up_to, threads, out);
        if (*table)
            return cmd_table(max_m, max_n, table_exact, threads, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ParseError& e) {
        err << "error: " << graph_path << ": " << e.what() << '\n';
        return usage_error;
    } catch (const ConstructionFailed& e) {
        err << "error: " << e.what() << '\n';
        return verified_false;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace metdim::cli

#endif
