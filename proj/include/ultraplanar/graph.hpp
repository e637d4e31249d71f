#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ultraplanar {

using VertexId = int;
using EdgeId = int;

// X̄ in {0,1}^|E|: 1 marks a cut edge.
using BinaryIndicator = std::vector<std::uint8_t>;
// X in [0,1]^|E|.
using FractionalIndicator = std::vector<double>;

inline constexpr double kIndicatorTol = 1e-9;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    double theta = 0.0;   // base weight, >= 0 for user input
    double length = 1.0;  // multiplier on the rounding cost of this edge
    bool fill = false;    // zero-weight edge added by triangulate()
};

/// Undirected multigraph with a combinatorial embedding.
///
/// The rotation of a vertex lists its incident edge ids in cyclic order.
/// The constructor checks only structural consistency (ids in range, no
/// self-loops, every edge listed exactly once at each endpoint); whether
/// the rotation system is actually planar is decided by validate_embedding().
class PlanarGraph {
public:
    PlanarGraph() = default;
    PlanarGraph(int num_vertices, std::vector<Edge> edges,
                std::vector<std::vector<EdgeId>> rotation);

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const EdgeId> rotation(VertexId v) const { return rotation_[v]; }
    const std::vector<std::vector<EdgeId>>& rotations() const { return rotation_; }

    VertexId other(EdgeId e, VertexId v) const {
        return edges_[e].u == v ? edges_[e].v : edges_[e].u;
    }
    // Index of e inside rotation(v); v must be an endpoint of e.
    int rotation_index(EdgeId e, VertexId v) const {
        return edges_[e].u == v ? pos_[2 * e] : pos_[2 * e + 1];
    }

    std::vector<double> thetas() const;
    std::vector<double> lengths() const;

private:
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> rotation_;
    std::vector<int> pos_;
};

// A dart is a directed copy of an edge: 2e runs u->v, 2e+1 runs v->u.
using Dart = int;
inline EdgeId dart_edge(Dart d) { return d >> 1; }
inline Dart reverse_dart(Dart d) { return d ^ 1; }
VertexId dart_tail(const PlanarGraph& g, Dart d);
VertexId dart_head(const PlanarGraph& g, Dart d);
// Dart that follows d along its face: leave head(d) on the edge after
// dart_edge(d) in the head's rotation.
Dart next_dart(const PlanarGraph& g, Dart d);

struct FaceSet {
    std::vector<std::vector<Dart>> faces;
    std::vector<int> face_of_dart;  // size 2|E|

    int num_faces() const { return static_cast<int>(faces.size()); }
    // (face on the u->v side, face on the v->u side)
    std::pair<int, int> faces_of_edge(EdgeId e) const {
        return {face_of_dart[2 * e], face_of_dart[2 * e + 1]};
    }
};

// Face tracing with no further checks.
FaceSet trace_faces(const PlanarGraph& g);

/// Traces every face and checks that the rotation system is a planar
/// embedding of a connected, bridgeless graph.
/// Throws Error{Disconnected | EulerViolation | BridgeDetected}.
FaceSet validate_embedding(const PlanarGraph& g);

bool is_connected(const PlanarGraph& g);
std::vector<EdgeId> find_bridges(const PlanarGraph& g);

struct DualGraph {
    struct DualEdge {
        int a = 0;  // face on the u->v side of the primal edge
        int b = 0;
        double weight = 0.0;
    };
    int num_nodes = 0;
    std::vector<DualEdge> edges;  // indexed by primal edge id
    // Per face, the bordering primal edges in face-walk order.
    std::vector<std::vector<EdgeId>> incident;
};

DualGraph dual_graph(const PlanarGraph& g, const FaceSet& faces,
                     std::span<const double> weights);

// Labels of the components of the subgraph formed by uncut edges, dense in
// 0..M-1 and numbered in order of the smallest vertex of each component.
std::vector<int> connected_components(const PlanarGraph& g, std::span<const std::uint8_t> cut);
int count_labels(std::span<const int> labels);

bool is_multicut(const PlanarGraph& g, std::span<const std::uint8_t> cut);

struct CycleViolation {
    EdgeId edge = 0;                // the ê of the violated inequality
    std::vector<EdgeId> path;       // c - ê, a path between the endpoints of ê
    double path_weight = 0.0;
    double edge_value = 0.0;
};

/// Exact separation of the cycle inequalities by one shortest-path query
/// per edge. An empty result certifies X in CYC(G).
std::vector<CycleViolation> separate_cycle_inequalities(const PlanarGraph& g,
                                                        std::span<const double> x,
                                                        double tol = kIndicatorTol);

/// Cuts isolating each connected component of the uncut subgraph, one per
/// component in label order. With two components both columns coincide;
/// pass the result through unique_columns() before adding it to a pool.
std::vector<BinaryIndicator> isocuts(const PlanarGraph& g, std::span<const std::uint8_t> cut);

// Drops repeated columns, keeping first occurrences in order.
std::vector<BinaryIndicator> unique_columns(std::vector<BinaryIndicator> columns);

// δ(S) for the vertex set {v : side[v] != 0}.
BinaryIndicator boundary_indicator(const PlanarGraph& g, std::span<const std::uint8_t> side);

struct Triangulation {
    PlanarGraph graph;  // original edges keep their ids; fill edges follow
    FaceSet faces;
    int original_edges = 0;
};

/// Fan triangulation of every face of length > 3 from a corner whose
/// vertex occurs once on the face. Fill edges get theta 0 and fill=true.
Triangulation triangulate(const PlanarGraph& g, const FaceSet& faces);

// The 2-edge-connected pieces left after deleting all bridges. Each block
// keeps the induced rotation system and maps back to the parent ids.
struct Block {
    PlanarGraph graph;
    std::vector<VertexId> vertex_map;
    std::vector<EdgeId> edge_map;
};
struct BridgeDecomposition {
    std::vector<EdgeId> bridges;
    std::vector<Block> blocks;  // blocks without edges are omitted
};
BridgeDecomposition split_at_bridges(const PlanarGraph& g);

}  // namespace ultraplanar
