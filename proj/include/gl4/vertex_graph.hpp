// Vertex-lattice incidence: enumeration of the p^2+1 type-2 lattices inside
// a type-4 lattice (and dually), the intersection rule, and BFS construction
// of the bipartite intersection graph with JSON/DOT export.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gl4/parallel.hpp"
#include "gl4/qspace.hpp"

namespace gl4 {

/// A verified vertex lattice with its type and cached dual.
struct VertexLattice {
    PLattice lat;
    PLattice dual;
    int type = 0;

    /// Verifies the chain p L subset L-dual subset L; throws domain_error
    /// otherwise.
    static VertexLattice make(const QSpace& Q, const PLattice& L);
};

/// The standard type-2 vertex lattice as a verified VertexLattice.
VertexLattice standard_vertex(const QSpace& Q);

/// All type-2 vertex lattices contained in a type-4 lattice: one per
/// isotropic line of L/L-dual under p[.,.] mod p; exactly p^2 + 1 of them.
std::vector<VertexLattice> type2_inside(const QSpace& Q, const VertexLattice& L4);

/// All type-4 vertex lattices containing a type-2 lattice: one per isotropic
/// line of L-dual/pL under [.,.] mod p; exactly p^2 + 1 of them.
std::vector<VertexLattice> type4_containing(const QSpace& Q, const VertexLattice& L2);

/// Intersection of the two lattices if it is again a vertex lattice.
std::optional<VertexLattice> intersection_rule(const QSpace& Q,
                                               const VertexLattice& A,
                                               const VertexLattice& B);

struct GraphNode {
    PLattice lat;
    int type = 0;
    int distance = 0;
};

/// Finite BFS ball of the bipartite containment graph.  Edges are
/// (type-4 key, type-2 key) pairs; both endpoints are always nodes.
struct IntersectionGraph {
    std::map<std::string, GraphNode> nodes;
    std::set<std::pair<std::string, std::string>> edges;
    std::string seed_key;
    int radius = 0;
};

/// BFS from the seed, alternating the two neighbor enumerations.  Refuses a
/// radius whose lattices could leave the precision budget (2r + 4 > N).
IntersectionGraph build_graph(const QSpace& Q, const VertexLattice& seed,
                              int radius, Exec exec = Exec::serial);

/// Versioned JSON document (schema 1): config, nodes, edges, stats with a
/// degree histogram.  Deterministic bytes for a fixed graph.
std::string graph_to_json(const QSpace& Q, const IntersectionGraph& g);

/// GraphViz DOT: type-4 nodes as circles, type-2 as squares; node ids are
/// short FNV-1a hashes of the canonical keys, full key in the tooltip.
std::string graph_to_dot(const IntersectionGraph& g);

}  // namespace gl4
