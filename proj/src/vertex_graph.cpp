#include "gl4/vertex_graph.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gl4/residue.hpp"

namespace gl4 {

namespace {

/// p-valuation of the self-pairing of the lifted quotient vector.
int lift_pairing_valuation(const QSpace& Q, const QuotientBasis& qb,
                           const std::vector<RElem>& coords) {
    const RingContext& R = *Q.ctx;
    auto [row, sc] = qb.lift(coords);
    Mat t = mat_mul(R, mat_mul(R, row, Q.gram.g), mat_transpose(row));
    return R.valuation(t.at(0, 0)) + 2 * sc + Q.gram.scale;
}

/// lat extended by one extra generator given at its own scale.
PLattice lat_with_row(const PLattice& lat, const Mat& row, int row_scale) {
    const RingContext& R = *lat.ctx();
    SMat g(lat.dim() + 1, lat.dim());
    for (int i = 0; i < lat.dim(); ++i)
        for (int j = 0; j < lat.dim(); ++j)
            g.at(i, j) = s_make(R, lat.gens().at(i, j), lat.scale());
    for (int j = 0; j < lat.dim(); ++j)
        g.at(lat.dim(), j) = s_make(R, row.at(0, j), row_scale);
    return PLattice::from_scaled(lat.ctx(), g);
}

std::vector<VertexLattice> sorted_unique(std::vector<VertexLattice> v) {
    std::sort(v.begin(), v.end(), [](const VertexLattice& a, const VertexLattice& b) {
        return a.lat.key() < b.lat.key();
    });
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1].lat == v[i].lat)
            throw inconsistency_error("duplicate vertex lattice in neighbor list");
    return v;
}

}  // namespace

VertexLattice VertexLattice::make(const QSpace& Q, const PLattice& L) {
    auto [ok, type] = is_vertex(Q, L);
    if (!ok) throw domain_error("not a vertex lattice: " + L.key());
    return VertexLattice{L, qs_dual(Q, L), type};
}

VertexLattice standard_vertex(const QSpace& Q) {
    return VertexLattice::make(Q, standard_type2(Q));
}

std::vector<VertexLattice> type2_inside(const QSpace& Q, const VertexLattice& L4) {
    if (L4.type != 4) throw domain_error("type2_inside needs a type-4 lattice");
    const RingContext& R = *Q.ctx;
    QuotientBasis qb(L4.lat, L4.dual);
    if (qb.dim() != 4)
        throw inconsistency_error("type-4 quotient is not 4-dimensional");
    std::vector<VertexLattice> out;
    for (const Mat& line : residue_lines(R, 4)) {
        std::vector<RElem> coords(4);
        for (int j = 0; j < 4; ++j) coords[static_cast<std::size_t>(j)] = line.at(0, j);
        // isotropic for p[.,.] mod p: the rational pairing must be integral
        if (lift_pairing_valuation(Q, qb, coords) < 0) continue;
        auto [row, sc] = qb.lift(coords);
        PLattice L = lat_with_row(L4.dual, row, sc);
        VertexLattice La = VertexLattice::make(Q, lat_dual(L, Q.gram));
        if (La.type != 2 || !lat_contains(L4.lat, La.lat))
            throw inconsistency_error("type2_inside produced a bad lattice");
        out.push_back(std::move(La));
    }
    out = sorted_unique(std::move(out));
    if (out.size() != static_cast<std::size_t>(Q.ctx->p * Q.ctx->p + 1))
        throw inconsistency_error("type2_inside count is not p^2 + 1");
    return out;
}

std::vector<VertexLattice> type4_containing(const QSpace& Q, const VertexLattice& L2) {
    if (L2.type != 2) throw domain_error("type4_containing needs a type-2 lattice");
    const RingContext& R = *Q.ctx;
    QuotientBasis qb(L2.dual, L2.lat.scaled_by(1));
    if (qb.dim() != 4)
        throw inconsistency_error("type-2 co-quotient is not 4-dimensional");
    std::vector<VertexLattice> out;
    for (const Mat& line : residue_lines(R, 4)) {
        std::vector<RElem> coords(4);
        for (int j = 0; j < 4; ++j) coords[static_cast<std::size_t>(j)] = line.at(0, j);
        // isotropic for [.,.]/2 mod p
        if (lift_pairing_valuation(Q, qb, coords) < 1) continue;
        auto [row, sc] = qb.lift(coords);
        // adjoining p^{-1} times the lift is the dual of cutting the lift's
        // orthogonal hyperplane out of L-dual
        VertexLattice Lb = VertexLattice::make(Q, lat_with_row(L2.lat, row, sc - 1));
        if (Lb.type != 4 || !lat_contains(Lb.lat, L2.lat))
            throw inconsistency_error("type4_containing produced a bad lattice");
        out.push_back(std::move(Lb));
    }
    out = sorted_unique(std::move(out));
    if (out.size() != static_cast<std::size_t>(Q.ctx->p * Q.ctx->p + 1))
        throw inconsistency_error("type4_containing count is not p^2 + 1");
    return out;
}

std::optional<VertexLattice> intersection_rule(const QSpace& Q,
                                               const VertexLattice& A,
                                               const VertexLattice& B) {
    PLattice C = lat_intersect(A.lat, B.lat);
    auto [ok, type] = is_vertex(Q, C);
    if (!ok) return std::nullopt;
    return VertexLattice{C, qs_dual(Q, C), type};
}

IntersectionGraph build_graph(const QSpace& Q, const VertexLattice& seed,
                              int radius, Exec exec) {
    if (radius < 0) throw domain_error("build_graph: negative radius");
    if (2 * radius + 4 > Q.ctx->N)
        throw precision_error("build_graph: radius " + std::to_string(radius) +
                              " would exceed the precision budget (2r + 4 > N)");
    IntersectionGraph g;
    g.seed_key = seed.lat.key();
    g.radius = radius;
    g.nodes.emplace(g.seed_key, GraphNode{seed.lat, seed.type, 0});

    std::vector<VertexLattice> frontier{seed};
    for (int d = 0; d < radius; ++d) {
        std::vector<std::vector<VertexLattice>> nbrs(frontier.size());
        parallel_for(exec, static_cast<std::ptrdiff_t>(frontier.size()),
                     [&](std::ptrdiff_t i) {
                         const VertexLattice& v = frontier[static_cast<std::size_t>(i)];
                         nbrs[static_cast<std::size_t>(i)] =
                             v.type == 4 ? type2_inside(Q, v) : type4_containing(Q, v);
                     });
        std::vector<VertexLattice> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const VertexLattice& v = frontier[i];
            std::string vkey = v.lat.key();
            for (VertexLattice& w : nbrs[i]) {
                std::string wkey = w.lat.key();
                if (!g.nodes.contains(wkey)) {
                    g.nodes.emplace(wkey, GraphNode{w.lat, w.type, d + 1});
                    next.push_back(std::move(w));
                }
                if (v.type == 4)
                    g.edges.emplace(vkey, wkey);
                else
                    g.edges.emplace(wkey, vkey);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const VertexLattice& a, const VertexLattice& b) {
                      return a.lat.key() < b.lat.key();
                  });
        frontier = std::move(next);
    }
    return g;
}

std::string graph_to_json(const QSpace& Q, const IntersectionGraph& g) {
    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = {{"p", Q.ctx->p},
                   {"N", Q.ctx->N},
                   {"Delta", Q.Delta},
                   {"radius", g.radius},
                   {"seed", g.seed_key}};
    nlohmann::json nodes = nlohmann::json::array();
    std::map<std::string, int> degree;
    for (const auto& [key, node] : g.nodes) {
        nodes.push_back({{"key", key}, {"type", node.type}, {"distance", node.distance}});
        degree[key] = 0;
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [k4, k2] : g.edges) {
        edges.push_back({k4, k2});
        ++degree[k4];
        ++degree[k2];
    }
    std::map<std::string, int> hist;
    for (const auto& [key, deg] : degree) ++hist[std::to_string(deg)];
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    j["stats"] = {{"node_count", g.nodes.size()},
                  {"edge_count", g.edges.size()},
                  {"degree_histogram", hist}};
    return j.dump(2) + "\n";
}

namespace {

std::string fnv1a_label(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "n" << std::hex << h;
    return os.str();
}

}  // namespace

std::string graph_to_dot(const IntersectionGraph& g) {
    std::ostringstream os;
    os << "graph vertex_lattices {\n";
    for (const auto& [key, node] : g.nodes)
        os << "  " << fnv1a_label(key) << " [shape="
           << (node.type == 4 ? "circle" : "square") << ", tooltip=\"" << key
           << "\", label=\"" << node.type << "@" << node.distance << "\"];\n";
    for (const auto& [k4, k2] : g.edges)
        os << "  " << fnv1a_label(k4) << " -- " << fnv1a_label(k2) << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace gl4
