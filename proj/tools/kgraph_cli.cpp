#include <kgraph/graph_operads.hpp>
#include <kgraph/homology.hpp>
#include <kgraph/representations.hpp>
#include <kgraph/suites.hpp>
#include <kgraph/tree_operads.hpp>
#include <kgraph/twisting.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace kgraph;

namespace {

// exit status 1: the computation ran and found a mathematical failure
struct MathFailure {
    std::string message;
};

struct Options {
    bool json = false;
    std::uint64_t seed = 1;
    int jobs = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> r;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) r.push_back(item);
    return r;
}

void print(const GraphLinComb& x, const Options& o) { std::cout << (o.json ? to_json(x) : to_string(x)) << "\n"; }

std::string tree_json(const TreeLinComb& x) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [t, c] : x) j.push_back({{"tree", to_string(t)}, {"coef", to_string(c)}});
    return j.dump();
}

void print(const TreeLinComb& x, const Options& o) { std::cout << (o.json ? tree_json(x) : to_string(x)) << "\n"; }

int env_max_internal(int fallback) {
    const char* v = std::getenv("KGRAPH_MAX_INTERNAL");
    if (!v) return fallback;
    int k = std::atoi(v);
    if (k < 0 || k > kMaxSliceInternal)
        throw ValidationError("KGRAPH_MAX_INTERNAL=" + std::string(v) + " is above the hard limit " + std::to_string(kMaxSliceInternal));
    return k;
}

GraphFamily graph_family(const std::string& s) {
    if (s == "graphs") return GraphFamily::GRAPHS;
    if (s == "graphs1") return GraphFamily::GRAPHS1;
    if (s == "sgraphs") return GraphFamily::SGRAPHS;
    if (s == "sgraphs1") return GraphFamily::SGRAPHS1;
    throw ValidationError("unknown graph family '" + s + "'");
}

GraphLinComb graph_differential(const SignedGraph& g, const std::string& family) {
    if (family == "graphs") return graphs_differential(g);
    if (family == "graphs1") return graphs1_differential(g);
    if (family == "sgraphs") return sgraphs_differential(make_lincomb(g), WeightSystem::wedge());
    if (family == "pdu") return pdu_differential(g);
    throw ValidationError("unknown differential '" + family + "'");
}

std::vector<PolyVector> parse_inputs(const std::string& s, int dim) {
    std::vector<PolyVector> r;
    for (const auto& item : split(s, ';')) r.push_back(parse_polyvector(item, dim));
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph complexes, operads and their representations"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "machine readable output");
    app.add_option("--seed", o.seed, "seed for randomized suites");
    app.add_option("--jobs", o.jobs, "worker threads for independent slices and suites")->check(CLI::Range(1, 64));

    std::string lhs, rhs, graph, tree, family = "graphs", kind, inputs, form, f_text, g_text, pi_text = "xi1*xi2", suite = "all",
                                    corpus, weights;
    int slot = 1, n = 0, max_internal = -1, max_edges = 4, max_grading = -1, dim = 0, order = 3;

    auto* compose = app.add_subcommand("compose", "operadic composition lhs o_slot rhs");
    compose->add_option("--lhs", lhs)->required();
    compose->add_option("--rhs", rhs)->required();
    compose->add_option("--slot", slot);

    auto* diff = app.add_subcommand("diff", "differential of a graph (graphs, graphs1, sgraphs, pdu) or tree (br, brinf)");
    diff->add_option("--graph", graph);
    diff->add_option("--tree", tree);
    diff->add_option("--family", family);

    auto* d2 = app.add_subcommand("d2check", "check d o d = 0 on every graph or tree of a shape");
    d2->add_option("--family", family)->required();
    d2->add_option("--n,--m", n);
    d2->add_option("--max-internal", max_internal);
    d2->add_option("--max-edges", max_edges);

    auto* member = app.add_subcommand("membership", "is the graph in the family");
    member->add_option("--graph", graph)->required();
    member->add_option("--family", family);

    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers summed over slices");
    betti_cmd->add_option("--family", family);
    betti_cmd->add_option("--n,--m", n)->required();
    betti_cmd->add_option("--max-grading", max_grading, "largest loop order (graphs) or excess (graphs1)");
    betti_cmd->add_option("--max-internal", max_internal);

    auto* basis = app.add_subcommand("basis", "pdu or string basis of arity n");
    basis->add_option("--kind", kind)->required()->check(CLI::IsMember({"pdu", "string"}));
    basis->add_option("--n", n)->required();

    auto* act = app.add_subcommand("act", "action of a graph on polyvector fields (dgra, sgra) or forms (gra1)");
    act->add_option("--graph", graph)->required();
    act->add_option("--inputs", inputs, "polyvectors separated by ';'");
    act->add_option("--dim", dim)->required()->check(CLI::Range(1, kMaxDimension));
    act->add_option("--form", form);

    auto* star_cmd = app.add_subcommand("star", "star product of a weight system up to eps^order");
    star_cmd->add_option("--f", f_text)->required();
    star_cmd->add_option("--g", g_text)->required();
    star_cmd->add_option("--pi", pi_text);
    star_cmd->add_option("--dim", dim)->required()->check(CLI::Range(1, kMaxDimension));
    star_cmd->add_option("--order", order)->check(CLI::Range(0, 3));
    star_cmd->add_option("--weights", weights, "weight system JSON file; Moyal when absent");

    auto* verify = app.add_subcommand("verify", "run relation suites");
    verify->add_option("--suite", suite);
    verify->add_option("--corpus", corpus, "tree corpus for the parser suite");

    auto* parse = app.add_subcommand("parse", "parse and print a tree or graph");
    parse->add_option("--tree", tree);
    parse->add_option("--graph", graph);

    auto* normalize = app.add_subcommand("normalize", "ks1 normal form of a tree or canonical form of a graph");
    normalize->add_option("--tree", tree);
    normalize->add_option("--graph", graph);

    if (argc > 1 && argv[1][0] != '-') {
        bool known = false;
        for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == argv[1];
        if (!known) {
            std::cerr << "unknown subcommand '" << argv[1] << "'\n";
            return 2;
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compose->parsed()) {
            auto a = parse_graph(lhs), b = parse_graph(rhs);
            if (a.kind == GraphKind::GRA1) print(gra1_compose(a, b), o);
            else if (a.kind == GraphKind::SGRA) print(sgra_insert_typeII(a, slot, b), o);
            else print(gra_compose(a, slot, b), o);
        } else if (diff->parsed()) {
            if (!tree.empty()) {
                auto t = parse_tree(tree);
                print(t.kind == TreeKind::BINF || t.kind == TreeKind::BBR ? brinf_differential(t) : br_differential(t), o);
            } else if (!graph.empty()) {
                print(graph_differential(parse_graph(graph), family), o);
            } else {
                throw ValidationError("diff needs --graph or --tree");
            }
        } else if (d2->parsed()) {
            std::size_t checked = 0, failed = 0;
            auto report = [&](bool ok, const std::string& what) {
                ++checked;
                if (!ok && failed++ < 5) std::cerr << "d^2 != 0 on " << what << "\n";
            };
            if (family == "br" || family == "brinf") {
                int v = max_internal < 0 ? 5 : max_internal;
                if (family == "br")
                    for (const auto& t : enumerate_br_trees(v)) report(br_differential(br_differential(t)).empty(), to_string(t));
                else
                    for (const auto& t : enumerate_binf_trees(v)) report(brinf_differential(brinf_differential(t)).empty(), to_string(t));
            } else {
                bool g1 = family == "graphs1" || family == "pdu_graphs1";
                bool pdu = family.rfind("pdu", 0) == 0;
                if (!g1 && family != "graphs" && family != "pdu_graphs") throw ValidationError("unknown family '" + family + "'");
                int k_max = env_max_internal(max_internal < 0 ? 2 : max_internal);
                if (k_max > kMaxSliceInternal || n > kMaxSliceArity) throw ValidationError("shape above the enumeration limits");
                for (int k = 0; k <= k_max; ++k)
                    for (const auto& g : enumerate_graphs({g1 ? GraphKind::GRA1 : GraphKind::GRA, n, 0, k, max_edges})) {
                        GraphLinComb dd;
                        for (const auto& [h, c] : graph_differential(g, pdu ? "pdu" : (g1 ? "graphs1" : "graphs")))
                            dd.add(graph_differential(h, pdu ? "pdu" : (g1 ? "graphs1" : "graphs")), c);
                        report(dd.empty(), to_string(g));
                    }
            }
            if (o.json) std::cout << nlohmann::ordered_json{{"checked", checked}, {"failed", failed}}.dump() << "\n";
            else std::cout << "checked " << checked << ", failed " << failed << "\n";
            if (failed) throw MathFailure{"d^2 != 0"};
        } else if (member->parsed()) {
            bool in = graphs_membership(parse_graph(graph), graph_family(family));
            std::cout << (o.json ? (in ? "true" : "false") : (in ? "member" : "not a member")) << "\n";
        } else if (betti_cmd->parsed()) {
            ComplexFamily f = parse_family(family);
            bool g1 = f == ComplexFamily::GRAPHS1 || f == ComplexFamily::PDU_GRAPHS1;
            int top = max_grading >= 0 ? max_grading : (g1 ? n + 2 : kMaxSliceLoopOrder);
            int cut = env_max_internal(max_internal);
            std::map<int, int> total;
            std::mutex mu;
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            std::exception_ptr error;
            auto worker = [&] {
                for (int l; (l = next++) <= top;) {
                    try {
                        auto b = betti(enumerate_slice(f, n, l, cut));
                        std::lock_guard<std::mutex> lock(mu);
                        for (auto [d, v] : b) total[d] += v;
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(mu);
                        if (!error) error = std::current_exception();
                    }
                }
            };
            for (int j = 1; j < o.jobs; ++j) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();
            if (error) std::rethrow_exception(error);
            if (o.json) {
                std::cout << betti_json(f, n, total) << "\n";
            } else {
                nlohmann::ordered_json j = nlohmann::ordered_json::object();
                for (auto it = total.rbegin(); it != total.rend(); ++it) j[std::to_string(it->first)] = it->second;
                std::cout << j.dump() << "\n";
            }
        } else if (basis->parsed()) {
            auto b = kind == "pdu" ? pdu_basis(n) : string_basis(n);
            if (o.json) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& g : b) j.push_back(to_string(g));
                std::cout << j.dump() << "\n";
            } else {
                for (const auto& g : b) std::cout << to_string(g) << "\n";
            }
        } else if (act->parsed()) {
            auto g = parse_graph(graph);
            auto gamma = parse_inputs(inputs, dim);
            if (g.kind == GraphKind::DGRA) {
                std::cout << to_string(act_dgra(g, gamma)) << "\n";
            } else if (g.kind == GraphKind::GRA) {
                std::cout << to_string(act_dgra(directed_expansion(g), gamma)) << "\n";
            } else if (g.kind == GraphKind::SGRA) {
                std::cout << to_string(act_sgra(g, gamma, dim)) << "\n";
            } else if (g.kind == GraphKind::GRA1) {
                if (form.empty()) throw ValidationError("gra1 graphs act on a form given by --form");
                std::cout << form_to_string(act_gra1(g, gamma, parse_form(form, dim))) << "\n";
            } else {
                throw ValidationError("no action for " + kind_name(g.kind) + " graphs");
            }
        } else if (star_cmd->parsed()) {
            WeightSystem w = WeightSystem::moyal(order);
            if (!weights.empty()) {
                std::ifstream in(weights);
                if (!in) throw ValidationError("cannot read " + weights);
                std::stringstream ss;
                ss << in.rdbuf();
                w = weight_system_from_json(ss.str());
                w.truncation_order = std::min(w.truncation_order, order);
            }
            auto s = weight_star(w, parse_polyvector(f_text, dim), parse_polyvector(g_text, dim), parse_polyvector(pi_text, dim));
            if (o.json) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& p : s) j.push_back(to_string(p));
                std::cout << j.dump() << "\n";
            } else {
                for (std::size_t k = 0; k < s.size(); ++k) std::cout << "eps^" << k << ": " << to_string(s[k]) << "\n";
            }
        } else if (verify->parsed()) {
            SuiteOptions so;
            so.seed = o.seed;
            so.corpus_path = corpus.empty() ? KGRAPH_DEFAULT_CORPUS : corpus;
            auto names = suite == "all" ? suite_names() : split(suite, ',');
            bool ok = true;
            for (const auto& r : run_suites(names, so, o.jobs)) {
                ok = ok && r.passed();
                if (o.json) {
                    std::cout << to_json(r) << "\n";
                    continue;
                }
                std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.summary << " (" << r.checks << " checks)\n";
                for (const auto& f : r.failures) std::cout << "  " << f << "\n";
            }
            if (!ok) return 1;
        } else if (parse->parsed()) {
            if (!tree.empty()) {
                auto t = parse_tree(tree);
                std::cout << (o.json ? nlohmann::ordered_json{{"kind", tree_kind_name(t.kind)}, {"tree", to_string(t)}}.dump()
                                     : to_string(t))
                          << "\n";
            } else if (!graph.empty()) {
                std::cout << to_string(parse_graph(graph)) << "\n";
            } else {
                throw ValidationError("parse needs --tree or --graph");
            }
        } else if (normalize->parsed()) {
            if (!tree.empty()) {
                print(ks1_normalize(parse_tree(tree)), o);
            } else if (!graph.empty()) {
                print(make_lincomb(parse_graph(graph)), o);
            } else {
                throw ValidationError("normalize needs --tree or --graph");
            }
        }
    } catch (const MathFailure& e) {
        std::cerr << e.message << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
