#include "ultraplanar/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

PlanarGraph straight_line_graph(const std::vector<Point>& positions,
                                const std::vector<std::pair<VertexId, VertexId>>& edges) {
    const int n = static_cast<int>(positions.size());
    std::vector<Edge> es;
    es.reserve(edges.size());
    std::vector<std::vector<EdgeId>> rot(n);
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
        rot[u].push_back(static_cast<EdgeId>(es.size()));
        rot[v].push_back(static_cast<EdgeId>(es.size()));
        es.push_back(Edge{u, v, 0.0, 1.0, false});
    }
    for (VertexId v = 0; v < n; ++v) {
        auto angle = [&](EdgeId e) {
            const VertexId w = es[e].u == v ? es[e].v : es[e].u;
            return std::atan2(positions[w][1] - positions[v][1], positions[w][0] - positions[v][0]);
        };
        std::stable_sort(rot[v].begin(), rot[v].end(), [&](EdgeId a, EdgeId b) { return angle(a) < angle(b); });
    }
    return PlanarGraph(n, std::move(es), std::move(rot));
}

PlanarGraph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Error(ErrorKind::BadDimensions, "grid needs positive dimensions");
    std::vector<Point> pos;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) pos.push_back({static_cast<double>(c), static_cast<double>(r)});
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) edges.emplace_back(r * cols + c, r * cols + c + 1);
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < cols; ++c) edges.emplace_back(r * cols + c, (r + 1) * cols + c);
    return straight_line_graph(pos, edges);
}

namespace {

// Connectivity / bridge test on an edge list with some edges removed.
bool acceptable(int n, const std::vector<std::pair<VertexId, VertexId>>& edges, const std::vector<char>& alive,
                bool allow_bridges) {
    std::vector<Point> pos(n, Point{0, 0});
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (alive[i]) kept.push_back(edges[i]);
    const PlanarGraph g = straight_line_graph(pos, kept);
    if (!is_connected(g)) return false;
    return allow_bridges || find_bridges(g).empty();
}

}  // namespace

PlanarGraph random_planar_graph(const RandomGraphOptions& options, std::mt19937_64& rng) {
    const int n = options.vertices;
    if (n < 3) throw Error(ErrorKind::BadDimensions, "random planar graphs need at least 3 vertices");
    std::vector<Point> pos{{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.9}};
    std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {0, 2}};
    std::vector<std::array<VertexId, 3>> faces{{0, 1, 2}};
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    for (VertexId v = 3; v < n; ++v) {
        const std::size_t f = std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng);
        const auto [a, b, c] = faces[f];
        const double wa = unit(rng), wb = unit(rng), wc = unit(rng), s = wa + wb + wc;
        pos.push_back({(wa * pos[a][0] + wb * pos[b][0] + wc * pos[c][0]) / s,
                       (wa * pos[a][1] + wb * pos[b][1] + wc * pos[c][1]) / s});
        edges.emplace_back(a, v);
        edges.emplace_back(b, v);
        edges.emplace_back(c, v);
        faces[f] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
    }
    std::vector<char> alive(edges.size(), 1);
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto target = static_cast<std::size_t>(options.delete_fraction * static_cast<double>(edges.size()));
    std::size_t removed = 0;
    for (std::size_t i : order) {
        if (removed >= target) break;
        alive[i] = 0;
        if (acceptable(n, edges, alive, options.allow_bridges)) ++removed;
        else alive[i] = 1;
    }
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (alive[i]) kept.push_back(edges[i]);
    return straight_line_graph(pos, kept);
}

PlanarGraph with_thetas(const PlanarGraph& g, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != g.num_edges())
        throw Error(ErrorKind::LengthMismatch, "theta vector does not match the edge count");
    std::vector<Edge> es = g.edges();
    for (std::size_t e = 0; e < es.size(); ++e) es[e].theta = theta[e];
    return PlanarGraph(g.num_vertices(), std::move(es), g.rotations());
}

}  // namespace ultraplanar
