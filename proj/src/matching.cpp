#include "ultraplanar/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

int MatchingGraph::add_edge(int u, int v, double weight) {
    if (u < 0 || v < 0 || u >= num_nodes_ || v >= num_nodes_)
        throw Error(ErrorKind::InvalidInput, "matching edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::InvalidInput, "matching graph cannot contain self-loops");
    edges_.push_back({u, v, weight});
    return static_cast<int>(edges_.size()) - 1;
}

namespace {

// Maximum-weight maximum-cardinality matching on integer weights.
//
// Edmonds' primal-dual blossom method in the formulation of Galil (1986):
// vertex duals u, blossom duals z, edge slack pi(k) = u_i + u_j - 2 w_k
// (blossom terms cancel for edges between top-level blossoms). Labels are
// 1 = S (outer), 2 = T (inner); bit 4 marks breadcrumbs in scan_blossom.
// Endpoint p of edge k is endpoint[p], with p = 2k or 2k+1.
class Blossom {
public:
    Blossom(int n, std::vector<std::pair<int, int>> ends, std::vector<std::int64_t> w)
        : n_(n), ends_(std::move(ends)), w_(std::move(w)) {}

    std::vector<int> solve();  // returns mate edge per vertex (-1 if single)

private:
    using i64 = std::int64_t;

    i64 slack(int k) const { return dual_[ends_[k].first] + dual_[ends_[k].second] - 2 * w_[k]; }
    int endpoint(int p) const { return (p & 1) ? ends_[p >> 1].second : ends_[p >> 1].first; }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : childs_[b]) leaves(t, out);
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    std::vector<std::pair<int, int>> ends_;
    std::vector<i64> w_;

    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int>> childs_, endps_;
    std::vector<std::optional<std::vector<int>>> blossombestedges_;
    std::vector<int> unused_;
    std::vector<i64> dual_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

void Blossom::assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        const int base = blossombase_[b];
        assign_label(endpoint(mate_[base]), 1, mate_[base] ^ 1);
    }
}

int Blossom::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = blossombase_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint(labelend_[b]);
            b = inblossom_[v];
            v = endpoint(labelend_[b]);
        }
        if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
}

void Blossom::add_blossom(int base, int k) {
    int v = ends_[k].first, w = ends_[k].second;
    const int bb = inblossom_[base];
    int bv = inblossom_[v], bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = childs_[b];
    auto& endps = endps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
        blossomparent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint(labelend_[bv]);
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint(labelend_[bw]);
        bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
        inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * n_, -1);
    for (int sub : path) {
        std::vector<std::vector<int>> nblists;
        if (!blossombestedges_[sub]) {
            for (int leaf : leaves(sub)) {
                std::vector<int> ks;
                for (int p : neighbend_[leaf]) ks.push_back(p >> 1);
                nblists.push_back(std::move(ks));
            }
        } else {
            nblists.push_back(*blossombestedges_[sub]);
        }
        for (const auto& nblist : nblists) {
            for (int kk : nblist) {
                int i = ends_[kk].first, j = ends_[kk].second;
                if (inblossom_[j] == b) std::swap(i, j);
                const int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 &&
                    (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                    bestedgeto[bj] = kk;
            }
        }
        blossombestedges_[sub].reset();
        bestedge_[sub] = -1;
    }
    std::vector<int> best;
    for (int kk : bestedgeto)
        if (kk != -1) best.push_back(kk);
    bestedge_[b] = -1;
    for (int kk : best)
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    blossombestedges_[b] = std::move(best);
}

void Blossom::expand_blossom(int b, bool endstage) {
    for (int s : childs_[b]) {
        blossomparent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dual_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) inblossom_[leaf] = s;
        }
    }
    if (!endstage && label_[b] == 2) {
        const int entrychild = inblossom_[endpoint(labelend_[b] ^ 1)];
        const int len = static_cast<int>(childs_[b].size());
        int j = static_cast<int>(std::find(childs_[b].begin(), childs_[b].end(), entrychild) - childs_[b].begin());
        int jstep, endptrick;
        if (j & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto at = [len](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint(p ^ 1)] = 0;
            label_[endpoint(at(endps_[b], j - endptrick) ^ endptrick ^ 1)] = 0;
            assign_label(endpoint(p ^ 1), 2, p);
            allowedge_[at(endps_[b], j - endptrick) >> 1] = 1;
            j += jstep;
            p = at(endps_[b], j - endptrick) ^ endptrick;
            allowedge_[p >> 1] = 1;
            j += jstep;
        }
        int bv = at(childs_[b], j);
        label_[endpoint(p ^ 1)] = label_[bv] = 2;
        labelend_[endpoint(p ^ 1)] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (at(childs_[b], j) != entrychild) {
            bv = at(childs_[b], j);
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int reached = -1;
            for (int leaf : leaves(bv)) {
                if (label_[leaf] != 0) {
                    reached = leaf;
                    break;
                }
            }
            if (reached != -1) {
                label_[reached] = 0;
                label_[endpoint(mate_[blossombase_[bv]])] = 0;
                assign_label(reached, 2, labelend_[reached]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].reset();
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void Blossom::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    const int len = static_cast<int>(childs_[b].size());
    const int i = static_cast<int>(std::find(childs_[b].begin(), childs_[b].end(), t) - childs_[b].begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    auto at = [len](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
    while (j != 0) {
        j += jstep;
        t = at(childs_[b], j);
        const int p = at(endps_[b], j - endptrick) ^ endptrick;
        if (t >= n_) augment_blossom(t, endpoint(p));
        j += jstep;
        t = at(childs_[b], j);
        if (t >= n_) augment_blossom(t, endpoint(p ^ 1));
        mate_[endpoint(p)] = p ^ 1;
        mate_[endpoint(p ^ 1)] = p;
    }
    std::rotate(childs_[b].begin(), childs_[b].begin() + i, childs_[b].end());
    std::rotate(endps_[b].begin(), endps_[b].begin() + i, endps_[b].end());
    blossombase_[b] = blossombase_[childs_[b][0]];
}

void Blossom::augment_matching(int k) {
    const int v = ends_[k].first, w = ends_[k].second;
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
        while (true) {
            const int bs = inblossom_[s];
            if (bs >= n_) augment_blossom(bs, s);
            mate_[s] = p;
            if (labelend_[bs] == -1) break;
            const int t = endpoint(labelend_[bs]);
            const int bt = inblossom_[t];
            s = endpoint(labelend_[bt]);
            const int j = endpoint(labelend_[bt] ^ 1);
            if (bt >= n_) augment_blossom(bt, j);
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> Blossom::solve() {
    const int m = static_cast<int>(ends_.size());
    if (m == 0) return std::vector<int>(n_, -1);
    i64 maxweight = 0;
    for (i64 x : w_) maxweight = std::max(maxweight, x);
    neighbend_.assign(n_, {});
    for (int k = 0; k < m; ++k) {
        neighbend_[ends_[k].first].push_back(2 * k + 1);
        neighbend_[ends_[k].second].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (int i = 0; i < n_; ++i) inblossom_[i] = i;
    blossomparent_.assign(2 * n_, -1);
    childs_.assign(2 * n_, {});
    endps_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (int i = 0; i < n_; ++i) blossombase_[i] = i;
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, std::nullopt);
    unused_.clear();
    for (int b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
    // pop_back() hands out the lowest free blossom id first.
    dual_.assign(2 * n_, 0);
    for (int i = 0; i < n_; ++i) dual_[i] = maxweight;
    allowedge_.assign(m, 0);

    for (int stage = 0; stage < n_; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n_; b < 2 * n_; ++b) blossombestedges_[b].reset();
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();
        for (int v = 0; v < n_; ++v)
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                const int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    const int k = p >> 1;
                    const int w = endpoint(p);
                    if (inblossom_[v] == inblossom_[w]) continue;
                    i64 kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) allowedge_[k] = 1;
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            const int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        const int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                    }
                }
            }
            if (augmented) break;

            // Dual adjustment. Maximum cardinality: no type-1 delta while
            // any other step is possible.
            int deltatype = -1;
            i64 delta = 0;
            int deltaedge = -1, deltablossom = -1;
            for (int v = 0; v < n_; ++v) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    const i64 d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n_; ++b) {
                if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    const i64 d = slack(bestedge_[b]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                    (deltatype == -1 || dual_[b] < delta)) {
                    delta = dual_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = 0;
                for (int v = 0; v < n_; ++v) delta = (v == 0) ? dual_[v] : std::min(delta, dual_[v]);
                delta = std::max<i64>(0, delta);
            }
            for (int v = 0; v < n_; ++v) {
                const int l = label_[inblossom_[v]];
                if (l == 1) dual_[v] -= delta;
                else if (l == 2) dual_[v] += delta;
            }
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == 1) dual_[b] += delta;
                    else if (label_[b] == 2) dual_[b] -= delta;
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = ends_[deltaedge].first, j = ends_[deltaedge].second;
                if (label_[inblossom_[i]] == 0) std::swap(i, j);
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                queue_.push_back(ends_[deltaedge].first);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) break;
        for (int b = n_; b < 2 * n_; ++b)
            if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dual_[b] == 0)
                expand_blossom(b, true);
    }

    std::vector<int> mate_edge(n_, -1);
    for (int v = 0; v < n_; ++v)
        if (mate_[v] >= 0) mate_edge[v] = mate_[v] >> 1;
    return mate_edge;
}

}  // namespace

Matching min_weight_perfect_matching(const MatchingGraph& g) {
    const int n = g.num_nodes();
    if (n % 2 != 0)
        throw Error(ErrorKind::NoPerfectMatching, "odd node count " + std::to_string(n) + " has no perfect matching");
    Matching result;
    result.mate.assign(n, -1);
    if (n == 0) return result;

    // Cheapest edge per node pair, lowest id on ties.
    std::map<std::pair<int, int>, int> best;
    for (int id = 0; id < g.num_edges(); ++id) {
        const auto& e = g.edge(id);
        const std::pair key{std::min(e.u, e.v), std::max(e.u, e.v)};
        auto it = best.find(key);
        if (it == best.end()) best.emplace(key, id);
        else if (e.weight < g.edge(it->second).weight) it->second = id;
    }
    std::vector<int> kept;
    kept.reserve(best.size());
    for (int id = 0; id < g.num_edges(); ++id) {
        const auto& e = g.edge(id);
        if (best.at({std::min(e.u, e.v), std::max(e.u, e.v)}) == id) kept.push_back(id);
    }

    double maxabs = 0.0;
    for (int id : kept) maxabs = std::max(maxabs, std::abs(g.edge(id).weight));
    int exponent = 0;
    if (maxabs > 0.0) {
        int e2 = 0;
        std::frexp(maxabs, &e2);  // maxabs < 2^e2
        exponent = std::clamp(40 - e2, -1000, 1000);
    }
    std::vector<std::pair<int, int>> ends;
    std::vector<std::int64_t> scaled;
    ends.reserve(kept.size());
    scaled.reserve(kept.size());
    std::int64_t top = 0;
    for (int id : kept) {
        const auto& e = g.edge(id);
        const auto q = static_cast<std::int64_t>(std::llround(std::ldexp(e.weight, exponent)));
        ends.emplace_back(e.u, e.v);
        scaled.push_back(q);
        top = std::max(top, q);
    }
    // Maximize (top + 1 - w): every perfect matching has n/2 edges, so the
    // maximum-cardinality optimum minimizes the original weight.
    for (auto& q : scaled) q = top + 1 - q;

    Blossom solver(n, std::move(ends), std::move(scaled));
    const std::vector<int> mate_edge = solver.solve();
    for (int v = 0; v < n; ++v) {
        if (mate_edge[v] < 0)
            throw Error(ErrorKind::NoPerfectMatching, "graph has no perfect matching");
        const int id = kept[mate_edge[v]];
        result.mate[v] = g.edge(id).u == v ? g.edge(id).v : g.edge(id).u;
        if (v < result.mate[v]) result.edges.push_back(id);
    }
    std::sort(result.edges.begin(), result.edges.end());
    for (int id : result.edges) result.weight += g.edge(id).weight;
    return result;
}

}  // namespace ultraplanar
