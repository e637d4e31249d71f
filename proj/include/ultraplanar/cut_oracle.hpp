#pragma once

#include <array>
#include <span>
#include <vector>

#include "ultraplanar/graph.hpp"
#include "ultraplanar/matching.hpp"

namespace ultraplanar {

/// A two-way cut δ(S) over the edges of the original graph.
struct CutColumn {
    BinaryIndicator z;
    double weight = 0.0;  // Σ_e w_e z_e under the query weights
};

/// Fisher's gadget graph for a cubic planar dual.
///
/// Each dual node (face) becomes a triangle of three port nodes joined by
/// zero-weight internal edges; each dual edge becomes one external edge
/// between the ports of its two faces. External edges carry weight -w_e.
/// Perfect matchings correspond one-to-one to even subgraphs of the dual,
/// which are the cuts of the primal: an edge is cut iff its external edge
/// is left unmatched.
struct ExpandedDual {
    struct Tag {
        bool external = false;
        int id = 0;  // primal edge id if external, face id otherwise
    };
    MatchingGraph graph;
    std::vector<Tag> tags;                  // per matching edge
    std::vector<int> external_of_edge;      // primal edge id -> matching edge id
    std::vector<std::array<int, 3>> gadget;  // face -> its three port nodes
};

/// Throws Error{NotTriangulated} if some dual node does not have degree 3
/// or a dual edge is a loop.
ExpandedDual fisher_expand(const DualGraph& dual);

/// Exact minimum-weight cut oracle for one embedded planar graph.
///
/// Preprocesses once (bridge split, fan triangulation, gadget graph) so the
/// same graph can be queried with many weight vectors. solve() is const
/// and safe to call from several threads at once.
class CutOracle {
public:
    explicit CutOracle(const PlanarGraph& graph);

    /// Minimum over all δ(S), the empty cut included, so the value is <= 0.
    /// A nonnegative optimum is reported as the zero column.
    CutColumn solve(std::span<const double> weights) const;

    const PlanarGraph& graph() const { return graph_; }

private:
    struct Piece {
        std::vector<VertexId> vertex_map;
        std::vector<EdgeId> edge_map;  // block edge -> parent edge
        Triangulation tri;
        ExpandedDual expanded;
    };

    PlanarGraph graph_;
    std::vector<EdgeId> bridges_;
    std::vector<Piece> pieces_;
};

CutColumn min_weight_cut(const PlanarGraph& graph, std::span<const double> weights);

// Vertex 2-colouring with colour changes exactly across cut edges.
// Throws Error{ParityError} when the cut is not of the form δ(S).
std::vector<std::uint8_t> cut_sides(const PlanarGraph& g, std::span<const std::uint8_t> cut);

}  // namespace ultraplanar
