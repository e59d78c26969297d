#include "gtsp/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace gtsp {

namespace {

// Endpoint p of edge k is endpoint[p], p = 2k or 2k+1; p ^ 1 is the other
// end. Blossoms are numbered n..2n-1, vertices are trivial blossoms.
template <class W>
class Blossom {
public:
    Blossom(int n, std::vector<std::pair<int, int>> ends, std::vector<W> weights, bool max_cardinality)
        : n_(n), ends_(std::move(ends)), w_(std::move(weights)), maxcard_(max_cardinality) {}

    std::vector<int> run() {
        const int nedge = static_cast<int>(ends_.size());
        std::vector<int> result(static_cast<std::size_t>(n_), -1);
        if (nedge == 0) return result;

        W maxweight = 0;
        for (const auto& x : w_) {
            if (x > maxweight) maxweight = x;
        }
        endpoint_.resize(2 * static_cast<std::size_t>(nedge));
        neighbend_.assign(static_cast<std::size_t>(n_), {});
        for (int k = 0; k < nedge; ++k) {
            endpoint_[2 * k] = ends_[k].first;
            endpoint_[2 * k + 1] = ends_[k].second;
            neighbend_[ends_[k].first].push_back(2 * k + 1);
            neighbend_[ends_[k].second].push_back(2 * k);
        }
        const std::size_t n2 = 2 * static_cast<std::size_t>(n_);
        mate_.assign(n_, -1);
        label_.assign(n2, 0);
        labelend_.assign(n2, -1);
        inblossom_.resize(n_);
        std::iota(inblossom_.begin(), inblossom_.end(), 0);
        blossomparent_.assign(n2, -1);
        blossomchilds_.assign(n2, {});
        blossombase_.assign(n2, -1);
        std::iota(blossombase_.begin(), blossombase_.begin() + n_, 0);
        blossomendps_.assign(n2, {});
        bestedge_.assign(n2, -1);
        blossombestedges_.assign(n2, {});
        has_bestedges_.assign(n2, 0);
        unused_.clear();
        for (int b = n_; b < 2 * n_; ++b) unused_.push_back(b);
        dualvar_.assign(n2, W(0));
        for (int v = 0; v < n_; ++v) dualvar_[v] = maxweight;
        allowedge_.assign(nedge, 0);

        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    GTSP_ENSURE(label_[inblossom_[v]] == 1, "queued vertex not an S-vertex");
                    for (int p : neighbend_[v]) {
                        const int k = p / 2;
                        const int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        W kslack = 0;
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

                int deltatype = -1;
                W delta = 0;
                int deltaedge = -1;
                int deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                }
                for (int v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        W d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        W ks = slack(bestedge_[b]);
                        GTSP_ENSURE(is_even(ks), "odd slack between S-blossoms");
                        W d = ks / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                    if (delta < 0) delta = 0;
                }
                for (int v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = 1;
                    int i = ends_[deltaedge].first;
                    int j = ends_[deltaedge].second;
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
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        for (int v = 0; v < n_; ++v) {
            if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
        }
        return result;
    }

private:
    static bool is_even(const W& x) {
        if constexpr (std::is_integral_v<W>) {
            return x % 2 == 0;
        } else {
            return mpz_even_p(x.get_mpz_t()) != 0;
        }
    }

    W slack(int k) const {
        return dualvar_[ends_[k].first] + dualvar_[ends_[k].second] - 2 * w_[k];
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[w];
        GTSP_ENSURE(label_[w] == 0 && label_[b] == 0, "relabelling a labelled vertex");
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[b];
            GTSP_ENSURE(mate_[base] >= 0, "T-blossom base is exposed");
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
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
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = ends_[k].first;
        int w = ends_[k].second;
        const int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        GTSP_ENSURE(!unused_.empty(), "out of blossom ids");
        const int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto& path = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
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
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
            inblossom_[leaf] = b;
        }
        std::vector<int> bestedgeto(2 * static_cast<std::size_t>(n_), -1);
        for (int sub : path) {
            std::vector<int> candidates;
            if (!has_bestedges_[sub]) {
                for (int leaf : leaves(sub)) {
                    for (int p : neighbend_[leaf]) candidates.push_back(p / 2);
                }
            } else {
                candidates = blossombestedges_[sub];
            }
            for (int e : candidates) {
                int i = ends_[e].first;
                int j = ends_[e].second;
                if (inblossom_[j] == b) std::swap(i, j);
                const int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = e;
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = 0;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int e : bestedgeto) {
            if (e != -1) blossombestedges_[b].push_back(e);
        }
        has_bestedges_[b] = 1;
        bestedge_[b] = -1;
        for (int e : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) bestedge_[b] = e;
        }
    }

    void expand_blossom(int b, bool endstage) {
        const std::vector<int> childs = blossomchilds_[b];
        for (int s : childs) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) inblossom_[leaf] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto& endps = blossomendps_[b];
            const int len = static_cast<int>(childs.size());
            auto at = [len](const std::vector<int>& a, int i) { return a[static_cast<std::size_t>(((i % len) + len) % len)]; };
            const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep = 0;
            int endptrick = 0;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = 1;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = at(childs, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found != -1) {
                    GTSP_ENSURE(label_[found] == 2 && inblossom_[found] == bv, "bad label inside expanded blossom");
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        auto at = [len](const std::vector<int>& a, int i) { return a[static_cast<std::size_t>(((i % len) + len) % len)]; };
        const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep = 0;
        int endptrick = 0;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(childs, j);
            const int p = at(endps, j - endptrick) ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = at(childs, j);
            if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
        GTSP_ENSURE(blossombase_[b] == v, "blossom base not moved to the augmenting vertex");
    }

    void augment_matching(int k) {
        const int v = ends_[k].first;
        const int w = ends_[k].second;
        const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : starts) {
            while (true) {
                const int bs = inblossom_[s];
                GTSP_ENSURE(label_[bs] == 1, "augmenting path through a non S-blossom");
                if (bs >= n_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                const int t = endpoint_[labelend_[bs]];
                const int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int n_;
    std::vector<std::pair<int, int>> ends_;
    std::vector<W> w_;
    bool maxcard_;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unused_;
    std::vector<W> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

std::vector<VertexId> max_weight_matching(int vertex_count, const std::vector<WeightedEdge>& edges, bool max_cardinality) {
    std::vector<std::pair<int, int>> ends;
    ends.reserve(edges.size());
    std::size_t bits = 0;
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
            throw InputError("max_weight_matching: bad edge");
        }
        ends.emplace_back(e.u, e.v);
        bits = std::max(bits, mpz_sizeinbase(e.weight.get_mpz_t(), 2));
    }
    // Duals stay within a few multiples of the largest weight.
    if (bits + 4 < 62) {
        std::vector<std::int64_t> w;
        w.reserve(edges.size());
        for (const auto& e : edges) w.push_back(e.weight.get_si());
        return Blossom<std::int64_t>(vertex_count, std::move(ends), std::move(w), max_cardinality).run();
    }
    std::vector<BigInt> w;
    w.reserve(edges.size());
    for (const auto& e : edges) w.push_back(e.weight);
    return Blossom<BigInt>(vertex_count, std::move(ends), std::move(w), max_cardinality).run();
}

PerfectMatching min_weight_perfect_matching(const Graph& g, const std::vector<Rational>& w) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    if (static_cast<int>(w.size()) != m) throw InputError("min_weight_perfect_matching: weight count mismatch");
    if (n % 2 != 0) throw InputError("min_weight_perfect_matching: odd vertex count");
    PerfectMatching result;
    result.weight = 0;
    if (n == 0) return result;

    // Clear denominators.
    BigInt lcm = 1;
    for (const auto& q : w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<BigInt> iw(static_cast<std::size_t>(m));
    BigInt top;
    for (int e = 0; e < m; ++e) {
        const Rational scaled = w[static_cast<std::size_t>(e)] * lcm;
        iw[static_cast<std::size_t>(e)] = scaled.get_num();
        if (e == 0 || iw[static_cast<std::size_t>(e)] > top) top = iw[static_cast<std::size_t>(e)];
    }
    // Maximise (K - w_e) 2^m + 2^(m-1-e): weight first, then the lowest ids.
    const BigInt k = top + 1;
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
        BigInt shifted = k - iw[static_cast<std::size_t>(e)];
        mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), static_cast<mp_bitcnt_t>(m));
        BigInt bit;
        mpz_setbit(bit.get_mpz_t(), static_cast<mp_bitcnt_t>(m - 1 - e));
        edges.push_back({g.edge(e).u, g.edge(e).v, shifted + bit});
    }
    const auto mate = max_weight_matching(n, edges, true);
    for (int e = 0; e < m; ++e) {
        const auto [u, v] = g.edge(e);
        if (mate[static_cast<std::size_t>(u)] == v) {
            result.edges.push_back(e);
            result.weight += w[static_cast<std::size_t>(e)];
        }
    }
    if (static_cast<int>(result.edges.size()) * 2 != n) {
        throw InputError("min_weight_perfect_matching: graph has no perfect matching");
    }
    return result;
}

bool third_bound_check(const Graph& g, const std::vector<Rational>& w, const PerfectMatching& m) {
    Rational total = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) total += w[static_cast<std::size_t>(e)];
    return 3 * m.weight <= total;
}

}  // namespace gtsp
