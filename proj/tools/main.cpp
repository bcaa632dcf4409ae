#include "vmodel/connection_matrix.hpp"
#include "vmodel/errors.hpp"
#include "vmodel/graph.hpp"
#include "vmodel/group_invariants.hpp"
#include "vmodel/sampling.hpp"
#include "vmodel/spin_analysis.hpp"
#include "vmodel/tensor.hpp"
#include "vmodel/vertex_model.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace vmodel;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInvariant = 4;

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Re-throws parse errors with the file name in front.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
    std::string text = slurp(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

VertexModel load_model(const std::string& model_path, const std::string& spin_path) {
    if (!model_path.empty() && !spin_path.empty()) throw PreconditionError("give either --model or --spin, not both");
    if (!spin_path.empty()) return parse_file(spin_path, parse_spin);
    if (model_path.empty()) throw PreconditionError("a model is required (--model or --spin)");
    return parse_file(model_path, parse_any_model);
}

void check_degree_bound(const VertexModel& h, const Graph& g) {
    auto bound = h.declared_degree();
    if (!bound) return;
    auto degrees = g.degrees();
    for (std::size_t v = 0; v < degrees.size(); ++v)
        if (degrees[v] > *bound)
            throw PreconditionError("vertex v" + std::to_string(v + 1) + " has degree " + std::to_string(degrees[v]) +
                                    ", above the model's degree bound " + std::to_string(*bound));
}

int run_selftest(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::size_t checks = 0;
    std::size_t failures = 0;
    auto fail = [&](const std::string& what) {
        ++failures;
        std::cout << "FAIL " << what << '\n';
    };
    for (std::size_t iter = 0; iter < count; ++iter) {
        const std::size_t n = 1 + rng() % 3;
        const VertexModel h = random_model(rng, n, 1 + static_cast<unsigned>(rng() % 3));

        const std::size_t k = 2 + rng() % 3;
        Fragment f = random_fragment(rng, k, 2, 3);
        std::size_t i = 1 + rng() % k;
        std::size_t j = 1 + rng() % k;
        if (i == j) j = i % k + 1;
        if (i > j) std::swap(i, j);
        ++checks;
        if (p_h(h, contract_fragment(f, i, j)) != contract(p_h(h, f), i, j))
            fail("contraction, iteration " + std::to_string(iter));

        Fragment a = random_fragment(rng, k, 2, 2);
        ++checks;
        if (partition_function(h, glue(f, a)) != bilinear_form(p_h(h, f), p_h(h, a)))
            fail("gluing, iteration " + std::to_string(iter));

        Graph g = random_graph(rng, 3, 5);
        ++checks;
        if (partition_polynomial(g, n).evaluate(h) != partition_function(h, g))
            fail("partition polynomial, iteration " + std::to_string(iter));
    }
    std::cout << "selftest seed=" << seed << " checks=" << checks << " failures=" << failures << '\n';
    return failures == 0 ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact vertex-model partition functions, connection ranks and orbit analysis"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand help for all subcommands");

    std::string model_path, spin_path, graph_path, poly_path, group_path, oneparam_path;
    std::size_t k = 1, n = 2, budget = 2, vertices = 1, kmax = 3, count = 100;
    std::optional<std::size_t> target, max_degree;
    unsigned e = 3;
    std::uint64_t seed = 1;

    auto* eval = app.add_subcommand("eval", "Partition function of a graph, or of a partition polynomial");
    eval->add_option("--model", model_path, "Model or spin file");
    eval->add_option("--spin", spin_path, "Spin file");
    auto* graph_opt = eval->add_option("--graph", graph_path, "Graph file");
    eval->add_option("--poly", poly_path, "File holding the output of 'pi'")->excludes(graph_opt);

    auto* matrix = app.add_subcommand("matrix", "Connection matrix over all k-fragments with few vertices");
    matrix->add_option("--model", model_path, "Model or spin file");
    matrix->add_option("--spin", spin_path, "Spin file");
    matrix->add_option("--k", k, "Number of open ends")->required();
    matrix->add_option("--vertices", vertices, "Largest internal vertex count")->capture_default_str();
    matrix->add_option("--max-degree", max_degree, "Vertex degree cap for enumeration");

    auto* rank_cmd = app.add_subcommand("rank", "Saturating rank of the k-th connection matrix");
    rank_cmd->add_option("--model", model_path, "Model or spin file");
    rank_cmd->add_option("--spin", spin_path, "Spin file");
    rank_cmd->add_option("--k", k, "Number of open ends")->required();
    rank_cmd->add_option("--budget", budget, "Largest internal vertex count")->capture_default_str();
    rank_cmd->add_option("--target", target, "Known invariant dimension used as a certificate");
    rank_cmd->add_option("--max-degree", max_degree, "Vertex degree cap for enumeration");

    auto* invdim = app.add_subcommand("invdim", "Dimension of the H-invariants in the k-th tensor power");
    auto* group_opt = invdim->add_option("--group", group_path, "Group file");
    invdim->add_option("--spin", spin_path, "Spin file; H is its stabilizer")->excludes(group_opt);
    invdim->add_option("--k", k, "Tensor power")->required();

    auto* brauer = app.add_subcommand("brauer", "Dimension of the O_n-invariants in the k-th tensor power");
    brauer->add_option("--n", n, "Dimension")->required();
    brauer->add_option("--k", k, "Tensor power")->required();

    auto* spin = app.add_subcommand("spin", "Closedness, stabilizer and invariant table of a spin model");
    spin->add_option("--spin", spin_path, "Spin file")->required();
    spin->add_option("--kmax", kmax, "Largest k in the table")->capture_default_str();

    auto* limit = app.add_subcommand("limit", "Limit of a model under a one-parameter subgroup as t -> 0");
    limit->add_option("--model", model_path, "Model or spin file");
    limit->add_option("--spin", spin_path, "Spin file");
    limit->add_option("--oneparam", oneparam_path, "One-parameter subgroup file")->required();
    limit->add_option("--e", e, "Degree of the truncation")->capture_default_str();

    auto* pi = app.add_subcommand("pi", "Partition polynomial of a graph");
    pi->add_option("--graph", graph_path, "Graph file")->required();
    pi->add_option("--n", n, "Number of colors")->required();

    auto* selftest = app.add_subcommand("selftest", "Randomized identity checks");
    selftest->add_option("--seed", seed, "Random seed")->capture_default_str();
    selftest->add_option("--count", count, "Iterations")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& s) {
        return app.exit(s);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitParse;
    }

    try {
        if (eval->parsed()) {
            const VertexModel h = load_model(model_path, spin_path);
            if (!poly_path.empty()) {
                auto poly = parse_file(poly_path, [](const std::string& t) { return PartitionPolynomial::parse(t); });
                std::cout << poly.evaluate(h).str() << '\n';
                return 0;
            }
            if (graph_path.empty()) throw PreconditionError("eval needs --graph or --poly");
            Fragment f = parse_file(graph_path, parse_fragment);
            if (f.k() != 0) throw PreconditionError("eval needs a graph, not a fragment with open ends");
            check_degree_bound(h, f.core);
            std::cout << partition_function(h, f.core).str() << '\n';
        } else if (matrix->parsed()) {
            const VertexModel h = load_model(model_path, spin_path);
            auto cap = max_degree ? *max_degree : default_max_degree(h, k);
            auto m = build_matrix(h, enumerate_fragments(k, vertices, cap));
            std::cout << format_matrix(m.entries);
            RankReport report;
            report.k = k;
            report.rank = rank_direct(m);
            report.fragments_used = m.fragments.size();
            std::size_t ambient = 1;
            for (std::size_t s = 0; s < k; ++s) ambient *= h.n();
            if (report.rank == ambient) {
                report.certified = true;
                report.certificate = Certificate::hit_ambient_bound;
            }
            std::cout << format_report(report) << '\n';
        } else if (rank_cmd->parsed()) {
            const VertexModel h = load_model(model_path, spin_path);
            SaturationOptions options;
            options.vertex_budget = budget;
            options.target = target;
            options.max_degree = max_degree;
            if (!max_degree && !h.degree_bound())
                std::cerr << "note: spin model, enumerating vertices of degree <= " << default_max_degree(h, k) << '\n';
            std::cout << format_report(saturating_rank(h, k, options)) << '\n';
        } else if (invdim->parsed()) {
            if (!group_path.empty()) {
                std::cout << invariant_dim_finite(parse_file(group_path, parse_group), k) << '\n';
            } else if (!spin_path.empty()) {
                auto h = parse_file(spin_path, parse_spin);
                const auto& s = *h.spin_form();
                std::cout << invariant_dim_finite(spin_stabilizer(s.points, s.weights), k) << '\n';
            } else {
                throw PreconditionError("invdim needs --group or --spin");
            }
        } else if (brauer->parsed()) {
            std::cout << brauer_invariant_dim(n, k) << '\n';
        } else if (spin->parsed()) {
            auto h = parse_file(spin_path, parse_spin);
            const auto& s = *h.spin_form();
            const bool closed = orbit_closed(s.points);
            const std::size_t span = rank(Matrix::from_rows(s.points, h.n()));
            std::cout << "closed=" << (closed ? "true" : "false") << '\n';
            std::cout << "span=" << span << " n=" << h.n() << '\n';
            if (span == h.n()) {
                auto group = spin_stabilizer(s.points, s.weights);
                std::cout << "stabilizer_order=" << group.order() << '\n';
                for (std::size_t kk = 1; kk <= kmax; ++kk)
                    std::cout << "k=" << kk << " invdim=" << invariant_dim_finite(group, kk) << '\n';
            } else {
                std::cout << "stabilizer_order=infinite\n";
            }
            if (!closed) {
                std::cout << "witness\n" << format_one_param(degenerate_witness(s.points, s.weights));
                auto normal = normalize_spin(h.n(), s.points, s.weights, 0);
                std::cout << "limit points=" << normal.points.size() << '\n';
                std::cout << format_model(normal.model);
            }
        } else if (limit->parsed()) {
            const VertexModel h = load_model(model_path, spin_path);
            auto lambda = parse_file(oneparam_path, parse_one_param);
            auto check = verify_one_param(lambda);
            if (!check.ok) throw PreconditionError("not a one-parameter subgroup of O_n: " + check.reason);
            auto result = apply_limit(lambda, h, e);
            if (!result)
                std::cout << "NO_LIMIT\n";
            else
                std::cout << format_model(*result);
        } else if (pi->parsed()) {
            Fragment f = parse_file(graph_path, parse_fragment);
            if (f.k() != 0) throw PreconditionError("pi needs a graph, not a fragment with open ends");
            std::cout << partition_polynomial(f.core, n).str() << '\n';
        } else if (selftest->parsed()) {
            return run_selftest(seed, count);
        }
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << '\n';
        return kExitParse;
    } catch (const FileError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitParse;
    } catch (const PreconditionError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitPrecondition;
    } catch (const InvariantError& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return kExitInvariant;
    }
    return 0;
}
