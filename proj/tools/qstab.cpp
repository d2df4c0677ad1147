// Command-line front end: graph analysis, Q-graph recognition,
// (kappa,tau)-regular set search, and batch scans with JSON reports.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qstab/qstab.hpp"
#include "qstab/report.hpp"

namespace {

using namespace qstab;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerify = 4;

struct NamedGraph {
    std::string name;
    Graph graph;
};

struct ParseStats {
    long long skipped_lines = 0;
};

Graph parse_edge_list_text(const std::string& text) {
    std::istringstream is(text);
    int n = 0;
    long long m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("edge list: expected header \"n m\"");
    std::vector<std::pair<std::string, std::string>> raw;
    for (long long i = 0; i < m; ++i) {
        std::string a, b;
        if (!(is >> a >> b)) throw std::invalid_argument("edge list: truncated after header");
        raw.emplace_back(a, b);
    }
    auto as_index = [&](const std::string& s) -> std::optional<int> {
        if (s.empty()) return std::nullopt;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        int v = std::stoi(s);
        if (v < 0 || v >= n) return std::nullopt;
        return v;
    };
    bool all_indices = true;
    for (const auto& [a, b] : raw)
        if (!as_index(a) || !as_index(b)) { all_indices = false; break; }

    std::vector<std::pair<int, int>> edges;
    if (all_indices) {
        for (const auto& [a, b] : raw) edges.emplace_back(*as_index(a), *as_index(b));
        return Graph::from_edge_list(n, edges);
    }
    std::vector<std::string> labels;
    auto id_of = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i);
        labels.push_back(s);
        return static_cast<int>(labels.size()) - 1;
    };
    for (const auto& [a, b] : raw) edges.emplace_back(id_of(a), id_of(b));
    if (static_cast<int>(labels.size()) > n)
        throw std::invalid_argument("edge list: more labels than the declared order");
    while (static_cast<int>(labels.size()) < n)
        labels.push_back("v" + std::to_string(labels.size()));
    return Graph::from_edge_list(n, edges, labels);
}

// Input resolution: family tag, then file (graph6 per line when the first
// byte is in the printable graph6 range, whole-file edge list otherwise),
// then a literal graph6 string.
std::vector<NamedGraph> read_input(const std::string& input, ParseStats* stats = nullptr) {
    if (is_named_tag(input)) return {{input, named(input)}};

    std::ifstream file(input);
    if (file.good()) {
        std::stringstream buffer;
        buffer << file.rdbuf();
        std::string text = buffer.str();
        std::size_t first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) return {};
        if (static_cast<unsigned char>(text[first]) >= 63 || text[first] == '>') {
            std::vector<NamedGraph> out;
            std::istringstream lines(text);
            std::string line;
            long long idx = 0;
            while (std::getline(lines, line)) {
                while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
                if (line.empty()) continue;
                ++idx;
                try {
                    out.push_back({"#" + std::to_string(idx), parse_graph6(line)});
                } catch (const Graph6Error&) {
                    if (stats) ++stats->skipped_lines;
                    else throw;
                }
            }
            return out;
        }
        return {{input, parse_edge_list_text(text)}};
    }

    return {{input, parse_graph6(input)}};
}

json graph_header_json(const NamedGraph& ng) {
    json out;
    out["name"] = ng.name;
    out["n"] = ng.graph.order();
    out["m"] = ng.graph.size();
    out["graph6"] = to_graph6(ng.graph);
    return out;
}

json analyze_graph(const NamedGraph& ng, const std::vector<double>& taus) {
    const Graph& g = ng.graph;
    json out = graph_header_json(ng);
    Spectrum spec = eigen_sym(g);
    out["spectrum"] = spectrum_to_json(spec);
    out["lambda_min"] = round_sig(lambda_min_refined(g));

    QpSolution best = upsilon_solution(g);
    out["upsilon"] = round_sig(best.value);
    if (g.size() > 0 && -lambda_min_refined(g) >= 1.0) {
        auto [lb1, lb2] = alpha_lower_bounds(g, best.tau, best);
        out["alpha_lower_bounds"] = {{"lb1", round_sig(lb1)}, {"lb2", round_sig(lb2)}};
    }
    if (g.is_regular() && g.size() > 0) out["hoffman"] = round_sig(hoffman_bound(g));
    if (g.order() <= oracle_caps::max_stable()) {
        StableSetResult s = max_stable_set(g);
        out["alpha"] = s.alpha;
        out["max_stable_set"] = labels_of(g, s.witness);
    } else {
        out["cap_notice"] = "oracle alpha skipped: order exceeds cap";
    }
    json per_tau = json::array();
    for (double tau : taus) {
        QpSolution sol = solve_p_tau(g, tau);
        json jt;
        jt["tau"] = round_sig(tau);
        jt["value"] = round_sig(sol.value);
        jt["certified"] = sol.global_certified;
        json xs = json::array();
        for (double xi : sol.x_star) xs.push_back(round_sig(xi));
        jt["x_star"] = xs;
        per_tau.push_back(jt);
    }
    out["tau_values"] = per_tau;
    return out;
}

json recognize_graph(const NamedGraph& ng, const std::string& method) {
    const Graph& g = ng.graph;
    json out = graph_header_json(ng);
    out["method"] = method;
    if (method == "rules") {
        out["verdict"] = verdict_to_json(recognize(g));
    } else if (method == "star") {
        bool q = recognize_via_star_sets(g);
        json v;
        v["status"] = q ? "Q" : "NotQ";
        v["upsilon"] = round_sig(upsilon(g));
        out["verdict"] = v;
    } else {  // oracle
        bool q = is_q_graph_oracle(g);
        json v;
        v["status"] = q ? "Q" : "NotQ";
        v["upsilon"] = round_sig(upsilon(g));
        v["alpha"] = max_stable_set(g).alpha;
        out["verdict"] = v;
    }
    return out;
}

json regular_set_graph(const NamedGraph& ng, int kappa, int tau, bool with_trace) {
    const Graph& g = ng.graph;
    json out = graph_header_json(ng);
    out["kappa"] = kappa;
    out["tau"] = tau;
    LinearSystemSolution sys = kt_linear_system(g, kappa, tau);
    out["consistent"] = sys.consistent;
    if (sys.consistent) {
        auto card = cardinality_test(sys);
        out["cardinality"] = card ? json(card->str()) : json(nullptr);
        out["nullity"] = sys.nullspace.size();
    }
    auto cert = solve_01(g, kappa, tau);
    if (cert) {
        if (!verify_kt_regular(g, cert->set, kappa, tau))
            throw std::runtime_error("regular-set certificate failed re-verification");
        out["set"] = labels_of(g, cert->set);
    } else {
        out["set"] = nullptr;
    }
    if (with_trace) {
        auto lm = integral_lambda_min(g);
        if (kappa == 0 && lm && tau == -*lm) {
            std::vector<std::string> trace;
            StarSet star = find_star_set(g, -tau);
            gomory_search(g, reduced_system(g, star, tau), 10000, &trace);
            out["trace"] = trace;
        } else {
            out["trace_notice"] = "tableau trace applies to kappa=0, tau=-lambda_min only";
        }
    }
    return out;
}

int run_with_reports(const std::string& input, const json& args,
                     const std::function<json(const NamedGraph&)>& per_graph) {
    auto start = std::chrono::steady_clock::now();
    std::vector<NamedGraph> graphs = read_input(input);
    json report;
    report["tool"] = "qstab";
    report["version"] = kVersion;
    report["input"] = input;
    report["arguments"] = args;
    json items = json::array();
    for (const NamedGraph& ng : graphs) items.push_back(per_graph(ng));
    report["graphs"] = items;
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count();
    std::cout << report.dump(2) << std::endl;
    return kExitOk;
}

int cmd_scan(const std::string& input, bool conjecture) {
    auto start = std::chrono::steady_clock::now();
    ParseStats stats;
    std::vector<NamedGraph> graphs = read_input(input, &stats);

    std::vector<json> results(graphs.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers == 0) workers = 1;
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < graphs.size(); i = next.fetch_add(1)) {
                try {
                    json item = graph_header_json(graphs[i]);
                    Verdict v = recognize(graphs[i].graph);
                    item["status"] = verdict_status_name(v.status);
                    item["upsilon"] = round_sig(v.upsilon_value);
                    bool adverse = graphs[i].graph.size() > 0 &&
                                   graphs[i].graph.isolated_vertices().empty() &&
                                   is_adverse(graphs[i].graph);
                    item["adverse"] = adverse;
                    results[i] = std::move(item);
                } catch (...) {
                    failed = true;
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed) throw std::runtime_error("scan worker failed");

    json report;
    report["tool"] = "qstab";
    report["version"] = kVersion;
    report["input"] = input;
    long long q = 0, notq = 0, undet = 0, adverse = 0;
    json items = json::array();
    for (auto& item : results) {
        std::string status = item["status"];
        if (status == "Q") ++q;
        else if (status == "NotQ") ++notq;
        else ++undet;
        if (item["adverse"].get<bool>()) ++adverse;
        items.push_back(std::move(item));
    }
    report["graphs"] = items;
    report["counts"] = {{"q", q},
                        {"not_q", notq},
                        {"undetermined", undet},
                        {"adverse", adverse},
                        {"skipped_lines", stats.skipped_lines}};
    if (conjecture) {
        std::vector<Graph> gs;
        gs.reserve(graphs.size());
        for (const auto& ng : graphs) gs.push_back(ng.graph);
        ConjectureReport rep = conjecture_scan(gs);
        report["conjecture"] = {{"total", rep.total},
                                {"adverse", rep.adverse},
                                {"counterexamples", rep.counterexamples},
                                {"skipped_caps", rep.skipped}};
    }
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count();
    std::cout << report.dump(2) << std::endl;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex-QP stability number toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string input;
    std::vector<double> taus;
    auto* analyze = app.add_subcommand("analyze", "spectrum, QP bounds, oracle alpha");
    analyze->add_option("input", input, "family tag, file, or graph6 string")->required();
    analyze->add_option("--tau", taus, "additional tau values for upsilon_G(tau)");

    std::string method = "rules";
    auto* rec = app.add_subcommand("recognize", "Q-graph recognition");
    rec->add_option("input", input)->required();
    rec->add_option("--method", method, "rules | star | oracle")
        ->check(CLI::IsMember({"rules", "star", "oracle"}));

    int kappa = 0, tau_int = 0;
    bool with_trace = false;
    auto* rset = app.add_subcommand("regular-set", "(kappa,tau)-regular set search");
    rset->add_option("input", input)->required();
    rset->add_option("--kappa", kappa, "induced regularity inside the set")->required();
    rset->add_option("--tau", tau_int, "neighbors outside the set (integer)")->required();
    rset->add_flag("--trace", with_trace, "print the simplex tableau sequence");

    bool conjecture = false;
    auto* scan = app.add_subcommand("scan", "batch recognition over a graph6 stream");
    scan->add_option("input", input)->required();
    scan->add_flag("--conjecture", conjecture, "adverse-graph conjecture check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            json args;
            args["tau"] = taus;
            return run_with_reports(input, args,
                                    [&](const NamedGraph& ng) { return analyze_graph(ng, taus); });
        }
        if (rec->parsed()) {
            json args;
            args["method"] = method;
            return run_with_reports(
                input, args, [&](const NamedGraph& ng) { return recognize_graph(ng, method); });
        }
        if (rset->parsed()) {
            json args;
            args["kappa"] = kappa;
            args["tau"] = tau_int;
            return run_with_reports(input, args, [&](const NamedGraph& ng) {
                return regular_set_graph(ng, kappa, tau_int, with_trace);
            });
        }
        if (scan->parsed()) return cmd_scan(input, conjecture);
    } catch (const OracleCapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << std::endl;
        return kExitCap;
    } catch (const Graph6Error& e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << std::endl;
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal verification failure: " << e.what() << std::endl;
        return kExitVerify;
    }
    return kExitOk;
}
