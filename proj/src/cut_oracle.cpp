#include "ultraplanar/cut_oracle.hpp"

#include <algorithm>
#include <string>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

ExpandedDual fisher_expand(const DualGraph& dual) {
    ExpandedDual out;
    const int f = dual.num_nodes;
    out.graph = MatchingGraph(3 * f);
    out.gadget.resize(f);
    for (int node = 0; node < f; ++node) {
        if (dual.incident[node].size() != 3)
            throw Error(ErrorKind::NotTriangulated, "dual node " + std::to_string(node) + " has degree " +
                                                        std::to_string(dual.incident[node].size()));
        out.gadget[node] = {3 * node, 3 * node + 1, 3 * node + 2};
    }
    // Port i of a face is the i-th edge of its walk.
    out.external_of_edge.assign(dual.edges.size(), -1);
    for (EdgeId e = 0; e < static_cast<EdgeId>(dual.edges.size()); ++e) {
        const auto& de = dual.edges[e];
        if (de.a == de.b) throw Error(ErrorKind::NotTriangulated, "dual edge " + std::to_string(e) + " is a loop");
        int port_a = -1, port_b = -1;
        for (int i = 0; i < 3; ++i) {
            if (dual.incident[de.a][i] == e) port_a = out.gadget[de.a][i];
            if (dual.incident[de.b][i] == e) port_b = out.gadget[de.b][i];
        }
        out.external_of_edge[e] = out.graph.add_edge(port_a, port_b, -de.weight);
        out.tags.push_back({true, e});
    }
    for (int node = 0; node < f; ++node) {
        const auto& g = out.gadget[node];
        out.graph.add_edge(g[0], g[1], 0.0);
        out.tags.push_back({false, node});
        out.graph.add_edge(g[1], g[2], 0.0);
        out.tags.push_back({false, node});
        out.graph.add_edge(g[0], g[2], 0.0);
        out.tags.push_back({false, node});
    }
    return out;
}

std::vector<std::uint8_t> cut_sides(const PlanarGraph& g, std::span<const std::uint8_t> cut) {
    const int n = g.num_vertices();
    std::vector<int> side(n, -1);
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : g.rotation(v)) {
                const VertexId w = g.other(e, v);
                const int want = side[v] ^ (cut[e] ? 1 : 0);
                if (side[w] == -1) {
                    side[w] = want;
                    stack.push_back(w);
                } else if (side[w] != want) {
                    throw Error(ErrorKind::ParityError, "edge set is not a cut: 2-colouring fails at edge " +
                                                            std::to_string(e));
                }
            }
        }
    }
    return std::vector<std::uint8_t>(side.begin(), side.end());
}

CutOracle::CutOracle(const PlanarGraph& graph) : graph_(graph) {
    if (!is_connected(graph_)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    BridgeDecomposition split = split_at_bridges(graph_);
    bridges_ = std::move(split.bridges);
    for (auto& block : split.blocks) {
        Piece piece;
        const FaceSet faces = validate_embedding(block.graph);
        piece.tri = triangulate(block.graph, faces);
        const std::vector<double> zero(piece.tri.graph.num_edges(), 0.0);
        piece.expanded = fisher_expand(dual_graph(piece.tri.graph, piece.tri.faces, zero));
        piece.vertex_map = std::move(block.vertex_map);
        piece.edge_map = std::move(block.edge_map);
        pieces_.push_back(std::move(piece));
    }
}

CutColumn CutOracle::solve(std::span<const double> weights) const {
    const int m = graph_.num_edges();
    if (static_cast<int>(weights.size()) != m)
        throw Error(ErrorKind::LengthMismatch, "cut weights length " + std::to_string(weights.size()) +
                                                   " != edge count " + std::to_string(m));
    CutColumn col;
    col.z.assign(m, 0);
    // A bridge can be toggled on its own by flipping one whole side.
    for (EdgeId e : bridges_)
        if (weights[e] < 0.0) col.z[e] = 1;

    for (const Piece& piece : pieces_) {
        const PlanarGraph& tg = piece.tri.graph;
        const MatchingGraph& mg = piece.expanded.graph;
        MatchingGraph weighted(mg.num_nodes());
        for (int id = 0; id < mg.num_edges(); ++id) {
            const auto& me = mg.edge(id);
            const auto& tag = piece.expanded.tags[id];
            double w = 0.0;
            if (tag.external && tag.id < piece.tri.original_edges) w = -weights[piece.edge_map[tag.id]];
            weighted.add_edge(me.u, me.v, w);
        }
        const Matching matching = min_weight_perfect_matching(weighted);

        std::vector<std::uint8_t> matched(mg.num_edges(), 0);
        for (int id : matching.edges) matched[id] = 1;
        BinaryIndicator tri_cut(tg.num_edges(), 0);
        for (EdgeId e = 0; e < tg.num_edges(); ++e)
            tri_cut[e] = matched[piece.expanded.external_of_edge[e]] ? 0 : 1;

        // Unmatched external edges must have even degree at every face.
        for (int f = 0; f < piece.tri.faces.num_faces(); ++f) {
            int deg = 0;
            for (Dart d : piece.tri.faces.faces[f]) deg += tri_cut[dart_edge(d)];
            if (deg % 2 != 0) throw Error(ErrorKind::ParityError, "odd unmatched degree at face " + std::to_string(f));
        }
        // Fill edges may be cut; colouring the triangulated graph checks
        // the whole set, then only original edges are kept.
        const auto side = cut_sides(tg, tri_cut);
        for (EdgeId e = 0; e < piece.tri.original_edges; ++e)
            if (side[tg.edge(e).u] != side[tg.edge(e).v]) col.z[piece.edge_map[e]] = 1;
    }

    cut_sides(graph_, col.z);
    col.weight = 0.0;
    for (EdgeId e = 0; e < m; ++e)
        if (col.z[e]) col.weight += weights[e];
    if (col.weight >= 0.0) {
        std::fill(col.z.begin(), col.z.end(), 0);
        col.weight = 0.0;
    }
    return col;
}

CutColumn min_weight_cut(const PlanarGraph& graph, std::span<const double> weights) {
    return CutOracle(graph).solve(weights);
}

}  // namespace ultraplanar
