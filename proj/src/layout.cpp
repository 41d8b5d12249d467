#include "torus_skein/layout.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace tsk {

namespace {

/** Closes same-row pairs, narrowest span first; returns slices read away from the boundary. */
std::vector<Slice> collapse_row(std::vector<int>& items, const Connector& d) {
    std::vector<Slice> out;
    auto same_row = [&](int v, int w) { return d.is_top(v) == d.is_top(w); };
    for (;;) {
        int bestL = -1, bestR = -1;
        for (int L = 0; L < static_cast<int>(items.size()); ++L) {
            int p = d.partner[items[L]];
            if (!same_row(items[L], p)) continue;
            auto it = std::find(items.begin() + L + 1, items.end(), p);
            if (it == items.end()) continue;
            int R = static_cast<int>(it - items.begin());
            if (bestL < 0 || R - L < bestR - bestL) {
                bestL = L;
                bestR = R;
            }
        }
        if (bestL < 0) break;
        int L = bestL;
        while (L + 1 < bestR) {
            std::swap(items[L], items[L + 1]);
            out.push_back(Slice::cross(L + 1, 1));
            ++L;
        }
        out.push_back(Slice::cap(L + 1));
        items.erase(items.begin() + L, items.begin() + L + 2);
    }
    return out;
}

/** Adjacent swaps sorting `ranks` ascending, as crossing slices at 1-based positions. */
std::vector<Slice> bubble(std::vector<int> ranks) {
    std::vector<Slice> out;
    for (std::size_t pass = 0; pass < ranks.size(); ++pass) {
        for (std::size_t p = 0; p + 1 < ranks.size(); ++p) {
            if (ranks[p] > ranks[p + 1]) {
                std::swap(ranks[p], ranks[p + 1]);
                out.push_back(Slice::cross(static_cast<int>(p) + 1, 1));
            }
        }
    }
    return out;
}

int component_of(const StrandTrace& t, int v) {
    for (std::size_t c = 0; c < t.components.size(); ++c)
        if (!t.components[c].closed && (t.components[c].start == v || t.components[c].end == v))
            return static_cast<int>(c);
    throw InternalError("vertex not on any strand");
}

void assign_signs(TangleWord& w, int vertex, Override ov) {
    StrandTrace t = trace_strands(w);
    int special = (ov != Override::None && vertex > 0) ? component_of(t, vertex) : -1;
    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        Slice& sl = w.slices[s];
        if (sl.kind != Slice::Cross) continue;
        const CrossingInfo& ci = t.crossings[s];
        if (ci.comp_a == ci.comp_b) throw InternalError("layout has a self crossing");
        int over = std::min(ci.comp_a, ci.comp_b);
        if (special >= 0 && (ci.comp_a == special || ci.comp_b == special)) {
            int other = ci.comp_a == special ? ci.comp_b : ci.comp_a;
            over = ov == Override::Over ? special : other;
        }
        sl.sign = over == ci.comp_a ? 1 : -1;
    }
}

TangleWord build_minimal(const Connector& d) {
    const int n = d.n;
    std::vector<int> bottom, top;
    for (int j = 1; j <= n; ++j) bottom.push_back(d.bottom(j));
    for (int i = 1; i <= n; ++i) top.push_back(i);
    TangleWord w{n, collapse_row(bottom, d)};
    std::vector<Slice> top_slices = collapse_row(top, d);
    if (bottom.size() != top.size()) throw InternalError("through strand count mismatch");
    std::vector<int> ranks;
    for (int v : bottom) {
        int p = d.partner[v];
        ranks.push_back(static_cast<int>(std::find(top.begin(), top.end(), p) - top.begin()));
    }
    for (const Slice& s : bubble(ranks)) w.slices.push_back(s);
    for (auto it = top_slices.rbegin(); it != top_slices.rend(); ++it) {
        Slice s = *it;
        if (s.kind == Slice::Cap) s.kind = Slice::Cup;
        w.slices.push_back(s);
    }
    return w;
}

GenWord build_basis_word(const Connector& d) {
    const int n = d.n;
    // slot of every boundary vertex in the middle row
    std::vector<int> through_bottom;  // bottom positions of through strands, ascending
    std::vector<std::pair<int, int>> bottom_caps, top_caps;
    for (int j = 1; j <= n; ++j) {
        int v = d.bottom(j);
        int p = d.partner[v];
        if (d.is_top(p)) {
            through_bottom.push_back(j);
        } else {
            int k = d.position(p);
            if (j < k) bottom_caps.push_back({j, k});
        }
    }
    for (int i = 1; i <= n; ++i) {
        int p = d.partner[i];
        if (d.is_top(p) && i < p) top_caps.push_back({i, p});
    }
    const int t = static_cast<int>(through_bottom.size());
    std::vector<int> bottom_slot(n + 1, 0), slot_top(n + 1, 0);
    for (int s = 0; s < t; ++s) {
        bottom_slot[through_bottom[s]] = s + 1;
        slot_top[s + 1] = d.partner[d.bottom(through_bottom[s])];
    }
    for (std::size_t j = 0; j < bottom_caps.size(); ++j) {
        bottom_slot[bottom_caps[j].first] = t + 2 * static_cast<int>(j) + 1;
        bottom_slot[bottom_caps[j].second] = t + 2 * static_cast<int>(j) + 2;
    }
    for (std::size_t j = 0; j < top_caps.size(); ++j) {
        slot_top[t + 2 * j + 1] = top_caps[j].first;
        slot_top[t + 2 * j + 2] = top_caps[j].second;
    }
    TangleWord w{n, {}};
    std::vector<int> ranks(bottom_slot.begin() + 1, bottom_slot.end());
    for (const Slice& s : bubble(ranks)) w.slices.push_back(s);
    for (std::size_t j = 0; j < bottom_caps.size(); ++j) {
        w.slices.push_back(Slice::cap(t + 2 * static_cast<int>(j) + 1));
        w.slices.push_back(Slice::cup(t + 2 * static_cast<int>(j) + 1));
    }
    std::vector<int> top_ranks(slot_top.begin() + 1, slot_top.end());
    for (const Slice& s : bubble(top_ranks)) w.slices.push_back(s);
    assign_signs(w, 0, Override::None);
    GenWord g;
    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        const Slice& sl = w.slices[s];
        if (sl.kind == Slice::Cross) {
            g.push_back({sl.sign > 0 ? Gen::G : Gen::Ginv, sl.pos});
        } else if (sl.kind == Slice::Cap) {
            g.push_back({Gen::E, sl.pos});
            ++s;
        }
    }
    return g;
}

std::mutex g_layout_mu;

}  // namespace

const TangleWord& minimal_layout(const Connector& d, int vertex, Override ov) {
    static std::map<std::tuple<Connector, int, Override>, TangleWord> memo;
    if (ov == Override::None) vertex = 0;
    auto key = std::make_tuple(d, vertex, ov);
    {
        std::lock_guard<std::mutex> lock(g_layout_mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    TangleWord w = build_minimal(d);
    assign_signs(w, vertex, ov);
    std::lock_guard<std::mutex> lock(g_layout_mu);
    return memo.emplace(key, std::move(w)).first->second;
}

const GenWord& basis_word(const Connector& d) {
    static std::map<Connector, GenWord> memo;
    {
        std::lock_guard<std::mutex> lock(g_layout_mu);
        auto it = memo.find(d);
        if (it != memo.end()) return it->second;
    }
    GenWord g = build_basis_word(d);
    std::lock_guard<std::mutex> lock(g_layout_mu);
    return memo.emplace(d, std::move(g)).first->second;
}

int crossing_count(const TangleWord& w) {
    int c = 0;
    for (const Slice& s : w.slices) c += s.kind == Slice::Cross;
    return c;
}

}  // namespace tsk
