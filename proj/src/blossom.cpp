// Primal-dual maximum-weight matching on general graphs (Edmonds' blossom
// method with Galil's O(n^3) bookkeeping). Vertices are 0..n-1; blossoms
// get ids n..2n-1. Edge endpoints are numbered p = 2k (u side) and 2k+1
// (v side), so endpoint p ^ 1 is the far end of the same edge.

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "fusionlab/matching.hpp"

namespace fusionlab::blossom {

namespace {

class Matcher {
public:
    Matcher(std::size_t n, std::span<const Edge> edges, bool max_cardinality)
        : n_(static_cast<long>(n)), edges_(edges.begin(), edges.end()), max_cardinality_(max_cardinality) {
        const long nedge = static_cast<long>(edges_.size());
        double max_weight = 0.0;
        for (const auto& e : edges_) max_weight = std::max(max_weight, e.weight);

        endpoint_.resize(2 * nedge);
        for (long k = 0; k < nedge; ++k) {
            endpoint_[2 * k] = static_cast<long>(edges_[k].u);
            endpoint_[2 * k + 1] = static_cast<long>(edges_[k].v);
        }
        neighbend_.assign(n_, {});
        for (long k = 0; k < nedge; ++k) {
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        for (long v = 0; v < n_; ++v) inblossom_[v] = v;
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        for (long v = 0; v < n_; ++v) blossombase_[v] = v;
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, std::nullopt);
        for (long b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
        dualvar_.assign(2 * n_, 0.0);
        for (long v = 0; v < n_; ++v) dualvar_[v] = max_weight;
        allowedge_.assign(nedge, false);
    }

    std::vector<long> solve() {
        for (long stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (long b = n_; b < 2 * n_; ++b) blossombestedges_[b].reset();
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();

            for (long v = 0; v < n_; ++v) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
            }

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    long v = queue_.back();
                    queue_.pop_back();
                    assert(label_[inblossom_[v]] == 1);
                    for (long p : neighbend_[v]) {
                        long k = p / 2;
                        long w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        double kslack = 0.0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0.0) allowedge_[k] = true;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                long base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                assert(label_[inblossom_[w]] == 2);
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            long b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;

                // No augmenting path with the current duals: pick the smallest dual step.
                int deltatype = -1;
                double delta = 0.0;
                long deltaedge = -1;
                long deltablossom = -1;
                if (!max_cardinality_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                }
                for (long v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        double d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (long b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        double d = slack(bestedge_[b]) / 2.0;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (long b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    // max-cardinality mode with no further progress possible
                    deltatype = 1;
                    delta = std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
                }

                for (long v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (long b = n_; b < 2 * n_; ++b) {
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
                    allowedge_[deltaedge] = true;
                    long i = static_cast<long>(edges_[deltaedge].u);
                    long j = static_cast<long>(edges_[deltaedge].v);
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    assert(label_[inblossom_[i]] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    long i = static_cast<long>(edges_[deltaedge].u);
                    assert(label_[inblossom_[i]] == 1);
                    queue_.push_back(i);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }

            if (!augmented) break;

            for (long b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0.0) {
                    expand_blossom(b, true);
                }
            }
        }

        std::vector<long> result(n_, -1);
        for (long v = 0; v < n_; ++v) {
            if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
        }
        return result;
    }

private:
    double slack(long k) const {
        const auto& e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2.0 * e.weight;
    }

    void leaves(long b, std::vector<long>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (long t : blossomchilds_[b]) leaves(t, out);
    }

    std::vector<long> leaves(long b) const {
        std::vector<long> out;
        leaves(b, out);
        return out;
    }

    void assign_label(long w, int t, long p) {
        long b = inblossom_[w];
        assert(label_[w] == 0 && label_[b] == 0);
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            long base = blossombase_[b];
            assert(mate_[base] >= 0);
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Traces back from v and w; returns the base of a new blossom, or -1 when
    // the two paths reach distinct exposed vertices (augmenting path).
    long scan_blossom(long v, long w) {
        std::vector<long> path;
        long base = -1;
        while (v != -1 || w != -1) {
            long b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            assert(label_[b] == 1);
            path.push_back(b);
            label_[b] = 5;
            assert(labelend_[b] == mate_[blossombase_[b]]);
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                assert(label_[b] == 2);
                assert(labelend_[b] >= 0);
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (long b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(long base, long k) {
        long v = static_cast<long>(edges_[k].u);
        long w = static_cast<long>(edges_[k].v);
        long bb = inblossom_[base];
        long bv = inblossom_[v];
        long bw = inblossom_[w];
        long b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<long> path;
        std::vector<long> endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            assert(label_[bv] == 2 || (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
            assert(labelend_[bv] >= 0);
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
            assert(label_[bw] == 2 || (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
            assert(labelend_[bw] >= 0);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        assert(label_[bb] == 1);
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0.0;
        for (long leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
            inblossom_[leaf] = b;
        }

        // Best edge from the new blossom to each neighbouring S-blossom.
        std::vector<long> bestedgeto(2 * n_, -1);
        for (long sub : path) {
            std::vector<long> candidates;
            if (blossombestedges_[sub]) {
                candidates = *blossombestedges_[sub];
            } else {
                for (long leaf : leaves(sub)) {
                    for (long p : neighbend_[leaf]) candidates.push_back(p / 2);
                }
            }
            for (long e : candidates) {
                long i = static_cast<long>(edges_[e].u);
                long j = static_cast<long>(edges_[e].v);
                if (inblossom_[j] == b) std::swap(i, j);
                long bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = e;
                }
            }
            blossombestedges_[sub].reset();
            bestedge_[sub] = -1;
        }
        std::vector<long> best;
        for (long e : bestedgeto) {
            if (e != -1) best.push_back(e);
        }
        bestedge_[b] = -1;
        for (long e : best) {
            if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) bestedge_[b] = e;
        }
        blossombestedges_[b] = std::move(best);
    }

    void expand_blossom(long b, bool endstage) {
        for (long s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0.0) {
                expand_blossom(s, endstage);
            } else {
                for (long leaf : leaves(s)) inblossom_[leaf] = s;
            }
        }

        if (!endstage && label_[b] == 2) {
            // Relabel the children along the even-length path through the blossom.
            assert(labelend_[b] >= 0);
            const auto& childs = blossomchilds_[b];
            const auto& endps = blossomendps_[b];
            const long len = static_cast<long>(childs.size());
            auto child = [&](long j) { return childs[((j % len) + len) % len]; };
            auto endp = [&](long j) { return endps[((j % len) + len) % len]; };

            long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            long j = static_cast<long>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            long jstep;
            long endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            long p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endp(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endp(j - endptrick) / 2] = true;
                j += jstep;
                p = endp(j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            long bv = child(j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (child(j) != entrychild) {
                bv = child(j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                long found = -1;
                for (long leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found != -1) {
                    assert(label_[found] == 2);
                    assert(inblossom_[found] == bv);
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
        blossombestedges_[b].reset();
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    // Swaps matched/unmatched edges inside blossom b so that v becomes its base.
    void augment_blossom(long b, long v) {
        long t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= n_) augment_blossom(t, v);

        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const long len = static_cast<long>(childs.size());
        auto child = [&](long j) { return childs[((j % len) + len) % len]; };
        auto endp = [&](long j) { return endps[((j % len) + len) % len]; };

        long i = static_cast<long>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        long j = i;
        long jstep;
        long endptrick;
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
            t = child(j);
            long p = endp(j - endptrick) ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = child(j);
            if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
        assert(blossombase_[b] == v);
    }

    void augment_matching(long k) {
        const long v = static_cast<long>(edges_[k].u);
        const long w = static_cast<long>(edges_[k].v);
        const std::pair<long, long> sides[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : sides) {
            while (true) {
                long bs = inblossom_[s];
                assert(label_[bs] == 1);
                assert(labelend_[bs] == mate_[blossombase_[bs]]);
                if (bs >= n_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                long t = endpoint_[labelend_[bs]];
                long bt = inblossom_[t];
                assert(label_[bt] == 2);
                assert(labelend_[bt] >= 0);
                s = endpoint_[labelend_[bt]];
                long j = endpoint_[labelend_[bt] ^ 1];
                assert(blossombase_[bt] == t);
                if (bt >= n_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    long n_;
    std::vector<Edge> edges_;
    bool max_cardinality_;

    std::vector<long> endpoint_;
    std::vector<std::vector<long>> neighbend_;
    std::vector<long> mate_;  // remote endpoint index of the matched edge
    std::vector<int> label_;  // 0 free, 1 S, 2 T (bit 4 marks scan_blossom)
    std::vector<long> labelend_;
    std::vector<long> inblossom_;
    std::vector<long> blossomparent_;
    std::vector<std::vector<long>> blossomchilds_;
    std::vector<long> blossombase_;
    std::vector<std::vector<long>> blossomendps_;
    std::vector<long> bestedge_;
    std::vector<std::optional<std::vector<long>>> blossombestedges_;
    std::vector<long> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<long> queue_;
};

}  // namespace

std::vector<long> maximum_weight_matching(std::size_t vertex_count, std::span<const Edge> edges,
                                          bool max_cardinality) {
    if (vertex_count == 0 || edges.empty()) return std::vector<long>(vertex_count, -1);
    return Matcher(vertex_count, edges, max_cardinality).solve();
}

}  // namespace fusionlab::blossom
