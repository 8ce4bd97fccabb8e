// gl4lat: command-line entry point.
//
//   gl4lat verify [suite]   run a named check suite (or "all"); one report
//                           line per check, `<module>/<anchor> PASS|FAIL ...`
//   gl4lat graph            BFS ball of the vertex-lattice incidence graph,
//                           emitted as deterministic JSON or DOT
//   gl4lat counts           isotropic-line counting table for p = 3, 5, 7
//
// Exit codes: 0 pass, 1 verification failure / count mismatch, 2 precision
// exhaustion, 64 usage error.  All output is a deterministic function of the
// run configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "gl4/quadric.hpp"
#include "gl4/verify.hpp"
#include "gl4/vertex_graph.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitUsage = 64;

struct RunConfig {
    long p = 3;
    int m = 2;
    int N = 12;
    int radius = 2;
    std::string seed = "type2-standard";
    std::string format = "text";
    std::string out;  // empty = stdout
};

/// Resolve the seed name (or serialized canonical key) to a vertex lattice.
gl4::VertexLattice resolve_seed(const gl4::QSpace& Q, const std::string& seed) {
    if (seed == "type2-standard") return gl4::standard_vertex(Q);
    if (seed == "type4-first")
        return gl4::type4_containing(Q, gl4::standard_vertex(Q)).front();
    // otherwise: a serialized canonical key of a previously exported node
    for (const gl4::VertexLattice& v :
         gl4::type4_containing(Q, gl4::standard_vertex(Q)))
        if (v.lat.key() == seed) return v;
    for (const gl4::VertexLattice& v :
         gl4::type2_inside(Q, gl4::type4_containing(Q, gl4::standard_vertex(Q)).front()))
        if (v.lat.key() == seed) return v;
    throw gl4::domain_error(
        "unknown seed '" + seed +
        "' (expected type2-standard, type4-first, or the canonical key of a "
        "radius-1 neighbor of the standard vertex)");
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
    f << payload;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    gl4::VerifyConfig vc{cfg.p, cfg.m, cfg.N, cfg.radius};
    std::vector<std::string> suites;
    if (suite == "all")
        suites = gl4::verify_suites();
    else
        suites.push_back(suite);

    int failures = 0;
    std::string report;
    for (const std::string& s : suites)
        for (const gl4::CheckResult& r : gl4::run_suite(s, vc)) {
            report += gl4::format_check(r) + "\n";
            failures += !r.pass;
        }
    emit(cfg, report);
    return failures == 0 ? 0 : kExitFail;
}

int cmd_graph(const RunConfig& cfg) {
    gl4::QSpace Q = gl4::QSpace::make(cfg.p, cfg.N);
    gl4::IntersectionGraph g =
        gl4::build_graph(Q, resolve_seed(Q, cfg.seed), cfg.radius);
    if (cfg.format == "dot")
        emit(cfg, gl4::graph_to_dot(g));
    else
        emit(cfg, gl4::graph_to_json(Q, g));
    return 0;
}

int cmd_counts(const RunConfig& cfg) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    bool ok = true;
    for (long p : {3L, 5L, 7L}) {
        gl4::QSpace Q = gl4::QSpace::make(p, cfg.N);
        gl4::VertexLattice L2 = gl4::standard_vertex(Q);
        auto ups = gl4::type4_containing(Q, L2);
        auto downs = gl4::type2_inside(Q, ups.front());
        auto [plus, minus] = gl4::x_lambda_points(gl4::QuadricContext::make(p, 1));
        long expected = p * p + 1;
        bool match = static_cast<long>(ups.size()) == expected &&
                     static_cast<long>(downs.size()) == expected &&
                     static_cast<long>(plus.size()) == expected &&
                     static_cast<long>(minus.size()) == expected;
        ok = ok && match;
        rows.push_back({{"p", p},
                        {"type4_containing", ups.size()},
                        {"type2_inside", downs.size()},
                        {"expected", expected},
                        {"x_lambda_plus_points", plus.size()},
                        {"x_lambda_minus_points", minus.size()},
                        {"match", match}});
    }

    std::string payload;
    if (cfg.format == "json") {
        payload = nlohmann::ordered_json{{"schema", 1}, {"rows", rows}}.dump(2);
        payload += "\n";
    } else {
        payload =
            "p   up-count  down-count  expected  |X_Lambda^+|  |X_Lambda^-|  "
            "match\n";
        for (const auto& r : rows) {
            char line[128];
            std::snprintf(line, sizeof line,
                          "%-3lld %-9lld %-11lld %-9lld %-13lld %-13lld %s\n",
                          r["p"].get<long long>(),
                          r["type4_containing"].get<long long>(),
                          r["type2_inside"].get<long long>(),
                          r["expected"].get<long long>(),
                          r["x_lambda_plus_points"].get<long long>(),
                          r["x_lambda_minus_points"].get<long long>(),
                          r["match"].get<bool>() ? "yes" : "NO");
            payload += line;
        }
    }
    emit(cfg, payload);
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string suite = "all";
    std::string config_path;

    CLI::App app{
        "Lattice model of the basic GL4 Rapoport-Zink space: verification "
        "suites, incidence-graph export, and counting tables"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path,
                      "JSON config file; explicit flags win on conflict");
        c->add_option("--p", cfg.p, "prime (3, 5 or 7)");
        c->add_option("--m", cfg.m, "residue degree");
        c->add_option("--N", cfg.N, "working p-adic precision");
        c->add_option("--radius", cfg.radius, "BFS depth for graph checks");
        c->add_option("--seed", cfg.seed,
                      "seed vertex: type2-standard, type4-first, or a "
                      "canonical lattice key");
        c->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json", "dot"}));
        c->add_option("-o,--out", cfg.out, "write output to a file");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a check suite");
    verify->add_option("suite", suite, "suite name or 'all'")
        ->check(CLI::IsMember([] {
            std::vector<std::string> v = gl4::verify_suites();
            v.push_back("all");
            return v;
        }()));
    add_common(verify);

    CLI::App* graph = app.add_subcommand(
        "graph", "emit a BFS ball of the vertex-lattice incidence graph");
    add_common(graph);

    CLI::App* counts =
        app.add_subcommand("counts", "isotropic-line counting table, p = 3, 5, 7");
    add_common(counts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        // config file first, then re-parse so flags win on conflict
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot read config file " << config_path << "\n";
                return kExitUsage;
            }
            nlohmann::json j = nlohmann::json::parse(f);
            CLI::App* sub = app.get_subcommands().front();
            auto flag_given = [&](const std::string& name) {
                return sub->count(name) > 0;
            };
            if (j.contains("p") && !flag_given("--p")) cfg.p = j["p"].get<long>();
            if (j.contains("m") && !flag_given("--m")) cfg.m = j["m"].get<int>();
            if (j.contains("N") && !flag_given("--N")) cfg.N = j["N"].get<int>();
            if (j.contains("radius") && !flag_given("--radius"))
                cfg.radius = j["radius"].get<int>();
            if (j.contains("seed") && !flag_given("--seed"))
                cfg.seed = j["seed"].get<std::string>();
            if (j.contains("format") && !flag_given("--format"))
                cfg.format = j["format"].get<std::string>();
        }

        if (!gl4::is_prime(cfg.p) || cfg.p < 3 || cfg.p > 7) {
            std::cerr << "usage error: --p must be 3, 5 or 7\n";
            return kExitUsage;
        }
        if (cfg.m < 1 || cfg.radius < 0 || cfg.N < 2 * cfg.radius + 4) {
            std::cerr << "usage error: precision policy requires N >= 2*radius + 4 "
                         "(got N = "
                      << cfg.N << ", radius = " << cfg.radius << ")\n";
            return kExitUsage;
        }

        if (verify->parsed()) return cmd_verify(cfg, suite);
        if (graph->parsed()) return cmd_graph(cfg);
        if (counts->parsed()) return cmd_counts(cfg);
        return kExitUsage;
    } catch (const gl4::precision_error& e) {
        std::cerr << "precision exhausted: " << e.what()
                  << " (N = " << cfg.N << ", radius = " << cfg.radius << ")\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
