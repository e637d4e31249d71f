#pragma once

#include <array>
#include <random>
#include <utility>
#include <vector>

#include "ultraplanar/graph.hpp"

namespace ultraplanar {

using Point = std::array<double, 2>;

/// Graph drawn with straight edges at the given positions; the rotation at
/// each vertex is the counter-clockwise order of its edges. The drawing
/// must be crossing-free for the result to be a planar embedding.
PlanarGraph straight_line_graph(const std::vector<Point>& positions,
                                const std::vector<std::pair<VertexId, VertexId>>& edges);

/// rows × cols grid; vertex r*cols + c. Horizontal edges are numbered
/// first, row by row, then vertical edges.
PlanarGraph grid_graph(int rows, int cols);

struct RandomGraphOptions {
    int vertices = 6;
    // Fraction of the triangulation's edges to try to delete.
    double delete_fraction = 0.3;
    bool allow_bridges = false;
};

/// Random stacked triangulation (repeated vertex insertion into a random
/// face) with a random subset of edges deleted. Deletions never disconnect
/// the graph and, unless allowed, never create a bridge.
PlanarGraph random_planar_graph(const RandomGraphOptions& options, std::mt19937_64& rng);

// Copy of g with new per-edge theta values.
PlanarGraph with_thetas(const PlanarGraph& g, const std::vector<double>& theta);

}  // namespace ultraplanar
