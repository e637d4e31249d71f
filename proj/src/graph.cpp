#include "ultraplanar/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

PlanarGraph::PlanarGraph(int num_vertices, std::vector<Edge> edges,
                         std::vector<std::vector<EdgeId>> rotation)
    : num_vertices_(num_vertices), edges_(std::move(edges)), rotation_(std::move(rotation)) {
    if (num_vertices_ < 1) throw Error(ErrorKind::InvalidInput, "graph needs at least one vertex");
    if (static_cast<int>(rotation_.size()) != num_vertices_)
        throw Error(ErrorKind::InvalidInput, "rotation system must list every vertex");
    const int m = num_edges();
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = edges_[e];
        if (ed.u < 0 || ed.u >= num_vertices_ || ed.v < 0 || ed.v >= num_vertices_)
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.u == ed.v)
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " is a self-loop");
    }
    pos_.assign(2 * m, -1);
    for (VertexId v = 0; v < num_vertices_; ++v) {
        const auto& rot = rotation_[v];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
            const EdgeId e = rot[i];
            if (e < 0 || e >= m)
                throw Error(ErrorKind::InvalidInput, "rotation of vertex " + std::to_string(v) + " names unknown edge");
            int slot;
            if (edges_[e].u == v) slot = 2 * e;
            else if (edges_[e].v == v) slot = 2 * e + 1;
            else throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " listed at non-incident vertex " + std::to_string(v));
            if (pos_[slot] != -1)
                throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " listed twice at vertex " + std::to_string(v));
            pos_[slot] = i;
        }
    }
    for (EdgeId e = 0; e < m; ++e)
        if (pos_[2 * e] < 0 || pos_[2 * e + 1] < 0)
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " missing from an endpoint rotation");
}

std::vector<double> PlanarGraph::thetas() const {
    std::vector<double> out(edges_.size());
    std::transform(edges_.begin(), edges_.end(), out.begin(), [](const Edge& e) { return e.theta; });
    return out;
}

std::vector<double> PlanarGraph::lengths() const {
    std::vector<double> out(edges_.size());
    std::transform(edges_.begin(), edges_.end(), out.begin(), [](const Edge& e) { return e.length; });
    return out;
}

VertexId dart_tail(const PlanarGraph& g, Dart d) {
    const Edge& e = g.edge(dart_edge(d));
    return (d & 1) ? e.v : e.u;
}

VertexId dart_head(const PlanarGraph& g, Dart d) {
    const Edge& e = g.edge(dart_edge(d));
    return (d & 1) ? e.u : e.v;
}

Dart next_dart(const PlanarGraph& g, Dart d) {
    const VertexId v = dart_head(g, d);
    const auto rot = g.rotation(v);
    const int i = g.rotation_index(dart_edge(d), v);
    const EdgeId nxt = rot[(i + 1) % rot.size()];
    return g.edge(nxt).u == v ? 2 * nxt : 2 * nxt + 1;
}

FaceSet trace_faces(const PlanarGraph& g) {
    FaceSet fs;
    const int darts = 2 * g.num_edges();
    fs.face_of_dart.assign(darts, -1);
    for (Dart start = 0; start < darts; ++start) {
        if (fs.face_of_dart[start] != -1) continue;
        const int f = fs.num_faces();
        std::vector<Dart> walk;
        Dart d = start;
        do {
            fs.face_of_dart[d] = f;
            walk.push_back(d);
            d = next_dart(g, d);
        } while (d != start);
        fs.faces.push_back(std::move(walk));
    }
    return fs;
}

bool is_connected(const PlanarGraph& g) {
    const BinaryIndicator none(g.num_edges(), 0);
    return count_labels(connected_components(g, none)) == 1;
}

FaceSet validate_embedding(const PlanarGraph& g) {
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    FaceSet fs = trace_faces(g);
    const int euler = g.num_vertices() - g.num_edges() + fs.num_faces();
    if (euler != 2)
        throw Error(ErrorKind::EulerViolation,
                    "rotation system is not planar: V - E + F = " + std::to_string(euler));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = fs.faces_of_edge(e);
        if (a == b) throw Error(ErrorKind::BridgeDetected, "edge " + std::to_string(e) + " is a bridge");
    }
    return fs;
}

std::vector<EdgeId> find_bridges(const PlanarGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<EdgeId> bridges;
    int timer = 0;
    // Iterative DFS; the parent edge (not the parent vertex) is skipped so
    // parallel edges are handled.
    struct Frame { VertexId v; EdgeId via; int next; };
    for (VertexId root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto rot = g.rotation(fr.v);
            if (fr.next < static_cast<int>(rot.size())) {
                const EdgeId e = rot[fr.next++];
                if (e == fr.via) continue;
                const VertexId w = g.other(e, fr.v);
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, e, 0});
                } else {
                    low[fr.v] = std::min(low[fr.v], disc[w]);
                }
            } else {
                const Frame done = fr;
                stack.pop_back();
                if (!stack.empty()) {
                    const VertexId p = stack.back().v;
                    low[p] = std::min(low[p], low[done.v]);
                    if (low[done.v] > disc[p]) bridges.push_back(done.via);
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

DualGraph dual_graph(const PlanarGraph& g, const FaceSet& faces, std::span<const double> weights) {
    if (static_cast<int>(weights.size()) != g.num_edges())
        throw Error(ErrorKind::LengthMismatch, "dual_graph: weight vector length " + std::to_string(weights.size()) +
                                                   " != edge count " + std::to_string(g.num_edges()));
    DualGraph dual;
    dual.num_nodes = faces.num_faces();
    dual.incident.resize(dual.num_nodes);
    dual.edges.reserve(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = faces.faces_of_edge(e);
        dual.edges.push_back({a, b, weights[e]});
    }
    // Incidences follow the face walks, i.e. the rotation order.
    for (int f = 0; f < dual.num_nodes; ++f)
        for (Dart d : faces.faces[f]) dual.incident[f].push_back(dart_edge(d));
    return dual;
}

std::vector<int> connected_components(const PlanarGraph& g, std::span<const std::uint8_t> cut) {
    const int n = g.num_vertices();
    std::vector<int> label(n, -1);
    int next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : g.rotation(v)) {
                if (cut[e]) continue;
                const VertexId w = g.other(e, v);
                if (label[w] == -1) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

int count_labels(std::span<const int> labels) {
    int m = 0;
    for (int l : labels) m = std::max(m, l + 1);
    return m;
}

bool is_multicut(const PlanarGraph& g, std::span<const std::uint8_t> cut) {
    const auto label = connected_components(g, cut);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (cut[e] && label[g.edge(e).u] == label[g.edge(e).v]) return false;
    return true;
}

std::vector<CycleViolation> separate_cycle_inequalities(const PlanarGraph& g, std::span<const double> x,
                                                        double tol) {
    if (static_cast<int>(x.size()) != g.num_edges())
        throw Error(ErrorKind::LengthMismatch, "separate_cycle_inequalities: indicator length mismatch");
    const int n = g.num_vertices();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<CycleViolation> out;
    std::vector<double> dist(n);
    std::vector<EdgeId> pred(n);
    using Item = std::pair<double, VertexId>;
    for (EdgeId hat = 0; hat < g.num_edges(); ++hat) {
        if (x[hat] <= tol) continue;  // path weights are >= 0
        const VertexId s = g.edge(hat).u, t = g.edge(hat).v;
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(pred.begin(), pred.end(), -1);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            const auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            if (v == t) break;
            for (EdgeId e : g.rotation(v)) {
                if (e == hat) continue;
                const VertexId w = g.other(e, v);
                const double nd = d + std::max(0.0, x[e]);
                if (nd < dist[w]) {
                    dist[w] = nd;
                    pred[w] = e;
                    pq.push({nd, w});
                }
            }
        }
        if (dist[t] == inf || dist[t] >= x[hat] - tol) continue;
        CycleViolation cv;
        cv.edge = hat;
        cv.path_weight = dist[t];
        cv.edge_value = x[hat];
        for (VertexId v = t; v != s; v = g.other(pred[v], v)) cv.path.push_back(pred[v]);
        std::reverse(cv.path.begin(), cv.path.end());
        out.push_back(std::move(cv));
    }
    return out;
}

BinaryIndicator boundary_indicator(const PlanarGraph& g, std::span<const std::uint8_t> side) {
    BinaryIndicator col(g.num_edges(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        col[e] = (side[g.edge(e).u] != 0) != (side[g.edge(e).v] != 0) ? 1 : 0;
    return col;
}

std::vector<BinaryIndicator> isocuts(const PlanarGraph& g, std::span<const std::uint8_t> cut) {
    const auto label = connected_components(g, cut);
    const int m = count_labels(label);
    std::vector<BinaryIndicator> cols(m, BinaryIndicator(g.num_edges(), 0));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const int a = label[g.edge(e).u], b = label[g.edge(e).v];
        if (a != b) {
            cols[a][e] = 1;
            cols[b][e] = 1;
        }
    }
    return cols;
}

std::vector<BinaryIndicator> unique_columns(std::vector<BinaryIndicator> columns) {
    std::set<BinaryIndicator> seen;
    std::vector<BinaryIndicator> out;
    for (auto& c : columns)
        if (seen.insert(c).second) out.push_back(std::move(c));
    return out;
}

Triangulation triangulate(const PlanarGraph& g, const FaceSet& faces) {
    std::vector<Edge> edges = g.edges();
    std::vector<std::vector<EdgeId>> rot = g.rotations();
    // Chords are recorded per corner first, then spliced into the rotations,
    // so corner positions computed from the input stay valid.
    // insert_after[v] : (anchor edge, chords to place right after it, in order)
    std::vector<std::vector<std::pair<EdgeId, std::vector<EdgeId>>>> insert_after(g.num_vertices());

    for (const auto& walk : faces.faces) {
        const int k = static_cast<int>(walk.size());
        if (k <= 3) continue;
        std::vector<VertexId> corner(k);
        for (int i = 0; i < k; ++i) corner[i] = dart_tail(g, walk[i]);
        int apex = -1;
        for (int i = 0; i < k && apex < 0; ++i)
            if (std::count(corner.begin(), corner.end(), corner[i]) == 1) apex = i;
        if (apex < 0) throw Error(ErrorKind::InvalidInput, "face without a simple corner cannot be fan-triangulated");
        // Rotate the walk so the apex corner comes first.
        std::vector<Dart> w(k);
        std::vector<VertexId> c(k);
        for (int i = 0; i < k; ++i) {
            w[i] = walk[(apex + i) % k];
            c[i] = corner[(apex + i) % k];
        }
        const VertexId v0 = c[0];
        std::vector<EdgeId> apex_chords;
        for (int i = 2; i <= k - 2; ++i) {
            const EdgeId chord = static_cast<EdgeId>(edges.size());
            edges.push_back({v0, c[i], 0.0, 1.0, true});
            // Corner at c[i] sits between the edges of w[i-1] and w[i].
            insert_after[c[i]].push_back({dart_edge(w[i - 1]), {chord}});
            apex_chords.push_back(chord);
        }
        std::reverse(apex_chords.begin(), apex_chords.end());
        insert_after[v0].push_back({dart_edge(w[k - 1]), std::move(apex_chords)});
    }

    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (insert_after[v].empty()) continue;
        std::vector<EdgeId> merged;
        merged.reserve(rot[v].size());
        for (EdgeId e : rot[v]) {
            merged.push_back(e);
            for (const auto& [anchor, chords] : insert_after[v])
                if (anchor == e) merged.insert(merged.end(), chords.begin(), chords.end());
        }
        rot[v] = std::move(merged);
    }

    Triangulation t;
    t.original_edges = g.num_edges();
    t.graph = PlanarGraph(g.num_vertices(), std::move(edges), std::move(rot));
    t.faces = trace_faces(t.graph);
    return t;
}

BridgeDecomposition split_at_bridges(const PlanarGraph& g) {
    BridgeDecomposition out;
    out.bridges = find_bridges(g);
    BinaryIndicator removed(g.num_edges(), 0);
    for (EdgeId e : out.bridges) removed[e] = 1;
    if (out.bridges.empty()) {
        if (g.num_edges() == 0) return out;
        Block whole;
        whole.graph = g;
        whole.vertex_map.resize(g.num_vertices());
        std::iota(whole.vertex_map.begin(), whole.vertex_map.end(), 0);
        whole.edge_map.resize(g.num_edges());
        std::iota(whole.edge_map.begin(), whole.edge_map.end(), 0);
        out.blocks.push_back(std::move(whole));
        return out;
    }
    const auto label = connected_components(g, removed);
    const int m = count_labels(label);
    std::vector<int> local_vertex(g.num_vertices(), -1), local_edge(g.num_edges(), -1);
    std::vector<Block> blocks(m);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        local_vertex[v] = static_cast<int>(blocks[label[v]].vertex_map.size());
        blocks[label[v]].vertex_map.push_back(v);
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (removed[e]) continue;
        auto& b = blocks[label[g.edge(e).u]];
        local_edge[e] = static_cast<int>(b.edge_map.size());
        b.edge_map.push_back(e);
    }
    for (auto& b : blocks) {
        if (b.edge_map.empty()) continue;
        std::vector<Edge> edges;
        for (EdgeId e : b.edge_map) {
            Edge ed = g.edge(e);
            ed.u = local_vertex[ed.u];
            ed.v = local_vertex[ed.v];
            edges.push_back(ed);
        }
        std::vector<std::vector<EdgeId>> rot(b.vertex_map.size());
        for (std::size_t i = 0; i < b.vertex_map.size(); ++i)
            for (EdgeId e : g.rotation(b.vertex_map[i]))
                if (!removed[e]) rot[i].push_back(local_edge[e]);
        b.graph = PlanarGraph(static_cast<int>(b.vertex_map.size()), std::move(edges), std::move(rot));
        out.blocks.push_back(std::move(b));
    }
    return out;
}

}  // namespace ultraplanar
