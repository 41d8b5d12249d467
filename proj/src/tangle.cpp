#include "torus_skein/tangle.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace tsk {

std::string Slice::token() const {
    switch (kind) {
        case Cross: return std::string(sign > 0 ? "C+" : "C-") + std::to_string(pos);
        case Cap: return "CAP" + std::to_string(pos);
        case Cup: return "CUP" + std::to_string(pos);
    }
    return "?";
}

std::vector<int> TangleWord::widths() const {
    std::vector<int> w;
    w.reserve(slices.size() + 1);
    int cur = n_bottom + 1;
    if (n_bottom < 0) throw UserError("WidthMismatch", "negative strand count");
    w.push_back(cur);
    for (std::size_t t = 0; t < slices.size(); ++t) {
        const Slice& s = slices[t];
        switch (s.kind) {
            case Slice::Cross:
                if (s.pos < 0 || s.pos + 1 > cur - 1 || (s.sign != 1 && s.sign != -1))
                    throw UserError("WidthMismatch", "crossing out of range at slice " + std::to_string(t));
                break;
            case Slice::Cap:
                if (s.pos < 1 || s.pos + 1 > cur - 1)
                    throw UserError("WidthMismatch", "cap out of range at slice " + std::to_string(t));
                cur -= 2;
                break;
            case Slice::Cup:
                if (s.pos < 1 || s.pos > cur)
                    throw UserError("WidthMismatch", "cup out of range at slice " + std::to_string(t));
                cur += 2;
                break;
        }
        w.push_back(cur);
    }
    return w;
}

int TangleWord::n_top() const { return widths().back() - 1; }

bool TangleWord::has_pole_crossing() const {
    int p = 0;
    for (const Slice& s : slices) {
        switch (s.kind) {
            case Slice::Cross:
                if (s.pos == p) return true;
                if (s.pos + 1 == p) return true;
                break;
            case Slice::Cap:
                if (p > s.pos + 1) p -= 2;
                break;
            case Slice::Cup:
                if (p >= s.pos) p += 2;
                break;
        }
    }
    return false;
}

std::string TangleWord::to_string() const {
    std::string out = "n=" + std::to_string(n_bottom);
    for (const Slice& s : slices) out += " " + s.token();
    return out;
}

TangleWord TangleWord::parse(std::string_view text) {
    TangleWord w;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos || pos - start > 6) throw ParseError(start, "expected number");
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    skip();
    if (text.substr(pos, 2) != "n=") throw ParseError(pos, "expected header n=<k>");
    pos += 2;
    w.n_bottom = number();
    for (;;) {
        skip();
        if (pos >= text.size()) break;
        std::size_t at = pos;
        if (text.substr(pos, 3) == "CAP") {
            pos += 3;
            w.slices.push_back(Slice::cap(number()));
        } else if (text.substr(pos, 3) == "CUP") {
            pos += 3;
            w.slices.push_back(Slice::cup(number()));
        } else if (text.substr(pos, 2) == "C+" || text.substr(pos, 2) == "C-") {
            int sign = text[pos + 1] == '+' ? 1 : -1;
            pos += 2;
            w.slices.push_back(Slice::cross(number(), sign));
        } else {
            throw ParseError(at, "unknown slice token");
        }
        if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
            throw ParseError(pos, "expected whitespace between tokens");
    }
    return w;
}

TangleWord& TangleWord::append(const TangleWord& o) {
    if (!slices.empty() || o.n_bottom != n_bottom) {
        if (n_top() != o.n_bottom) throw UserError("WidthMismatch", "concatenating words of different sizes");
    }
    slices.insert(slices.end(), o.slices.begin(), o.slices.end());
    return *this;
}

TangleWord word_identity(int n) { return TangleWord{n, {}}; }

TangleWord word_G(int n, int i, int sign) {
    if (i < 1 || i >= n) throw UserError("IndexOutOfRange", "g index out of range");
    return TangleWord{n, {Slice::cross(i, sign)}};
}

TangleWord word_E(int n, int i) {
    if (i < 1 || i >= n) throw UserError("IndexOutOfRange", "e index out of range");
    return TangleWord{n, {Slice::cap(i), Slice::cup(i)}};
}

TangleWord word_X(int n, int sign) {
    if (n < 1) throw UserError("IndexOutOfRange", "x1 needs n >= 1");
    return TangleWord{n, {Slice::cross(0, sign), Slice::cross(0, sign)}};
}

void word_validate(const TangleWord& w) {
    (void)w.widths();
    int p = 0;
    for (std::size_t t = 0; t < w.slices.size(); ++t) {
        const Slice& s = w.slices[t];
        switch (s.kind) {
            case Slice::Cross:
                if (s.pos == p) {
                    p = s.pos + 1;
                } else if (s.pos + 1 == p) {
                    p = s.pos;
                }
                break;
            case Slice::Cap:
                if (p == s.pos || p == s.pos + 1)
                    throw UserError("PoleCapture", "cap meets the pole at slice " + std::to_string(t));
                if (p > s.pos + 1) p -= 2;
                break;
            case Slice::Cup:
                if (p >= s.pos) p += 2;
                break;
        }
    }
    if (p != 0) throw UserError("PoleDisplaced", "pole ends at position " + std::to_string(p));
}

int pole_list_winding(const std::string& pole_list, bool cyclic) {
    std::string st;
    for (char c : pole_list) {
        if (!st.empty() && st.back() == c) {
            st.pop_back();
        } else {
            st.push_back(c);
        }
    }
    if (cyclic) {
        std::size_t lo = 0, hi = st.size();
        while (hi - lo >= 2 && st[lo] == st[hi - 1]) {
            ++lo;
            --hi;
        }
        st = st.substr(lo, hi - lo);
    }
    if (st.empty()) return 0;
    int r = static_cast<int>(st.size() / 2);
    return st.front() == '+' ? r : -r;
}

namespace {

struct WalkState {
    int t, p, dir;  // dir +1: leaving level t upward; -1: leaving level t downward
    bool operator==(const WalkState&) const = default;
};

struct PassHit {
    int slice = -1;
    int pass = 0;  // 0 = A (i <-> i+1 going up), 1 = B
};

/** One step along a strand. Returns false when a boundary is reached. */
bool step(const TangleWord& w, int L, WalkState& st, PassHit& hit) {
    hit.slice = -1;
    if (st.dir > 0) {
        if (st.t == L) return false;
        const Slice& s = w.slices[st.t];
        int p = st.p;
        switch (s.kind) {
            case Slice::Cross:
                if (p == s.pos) {
                    hit = {st.t, 0};
                    st = {st.t + 1, s.pos + 1, 1};
                } else if (p == s.pos + 1) {
                    hit = {st.t, 1};
                    st = {st.t + 1, s.pos, 1};
                } else {
                    st = {st.t + 1, p, 1};
                }
                break;
            case Slice::Cap:
                if (p == s.pos) {
                    st = {st.t, s.pos + 1, -1};
                } else if (p == s.pos + 1) {
                    st = {st.t, s.pos, -1};
                } else if (p < s.pos) {
                    st = {st.t + 1, p, 1};
                } else {
                    st = {st.t + 1, p - 2, 1};
                }
                break;
            case Slice::Cup:
                st = {st.t + 1, p < s.pos ? p : p + 2, 1};
                break;
        }
        return true;
    }
    if (st.t == 0) return false;
    const Slice& s = w.slices[st.t - 1];
    int p = st.p;
    switch (s.kind) {
        case Slice::Cross:
            if (p == s.pos + 1) {
                hit = {st.t - 1, 0};
                st = {st.t - 1, s.pos, -1};
            } else if (p == s.pos) {
                hit = {st.t - 1, 1};
                st = {st.t - 1, s.pos + 1, -1};
            } else {
                st = {st.t - 1, p, -1};
            }
            break;
        case Slice::Cup:
            if (p == s.pos) {
                st = {st.t, s.pos + 1, 1};
            } else if (p == s.pos + 1) {
                st = {st.t, s.pos, 1};
            } else if (p < s.pos) {
                st = {st.t - 1, p, -1};
            } else {
                st = {st.t - 1, p - 2, -1};
            }
            break;
        case Slice::Cap:
            st = {st.t - 1, p < s.pos ? p : p + 2, -1};
            break;
    }
    return true;
}

struct RawHit {
    int slice, pass, dir;
    long stepno;
};

}  // namespace

namespace {

StrandTrace trace_impl(const TangleWord& w, std::vector<std::vector<int>>* seg_out) {
    const std::vector<int> widths = w.widths();
    const int L = static_cast<int>(w.slices.size());
    StrandTrace tr;
    tr.n_bottom = w.n_bottom;
    tr.n_top = widths.back() - 1;
    tr.crossings.assign(L, CrossingInfo{});
    std::vector<std::vector<int>> seg(L + 1);
    for (int t = 0; t <= L; ++t) seg[t].assign(widths[t], -2);
    const int N = tr.n_top + tr.n_bottom;
    long stepno = 0;
    std::vector<std::vector<RawHit>> hits;

    auto mark = [&](const WalkState& st, int comp) { seg[st.t][st.p] = comp; };
    auto record = [&](const PassHit& h, int comp, int dir) {
        CrossingInfo& ci = tr.crossings[h.slice];
        if (h.pass == 0) {
            ci.comp_a = comp;
            ci.dir_a = dir;
            ci.first_a = stepno;
        } else {
            ci.comp_b = comp;
            ci.dir_b = dir;
            ci.first_b = stepno;
        }
        if (comp >= 0) hits[comp].push_back({h.slice, h.pass, dir, stepno});
        ++stepno;
    };

    // pole
    {
        WalkState st{0, 0, 1};
        mark(st, -1);
        PassHit h;
        for (;;) {
            if (!step(w, L, st, h)) break;
            if (h.slice >= 0) record(h, -1, st.dir);
            mark(st, -1);
        }
    }

    auto top_vertex_state = [&](int v) -> WalkState {
        if (v <= tr.n_top) return {L, v, -1};
        int j = N + 1 - v;
        return {0, j, 1};
    };
    auto state_vertex = [&](const WalkState& st) -> int {
        if (st.t == L && st.dir > 0) return st.p;
        return N + 1 - st.p;
    };

    for (int v = 1; v <= N; ++v) {
        WalkState st = top_vertex_state(v);
        if (seg[st.t][st.p] != -2) continue;
        int comp = static_cast<int>(tr.components.size());
        tr.components.push_back({});
        hits.emplace_back();
        tr.components.back().start = v;
        mark(st, comp);
        PassHit h;
        while (step(w, L, st, h)) {
            if (h.slice >= 0) record(h, comp, st.dir);
            mark(st, comp);
        }
        tr.components[comp].end = state_vertex(st);
    }
    for (int t = 0; t < L; ++t) {
        const Slice& s = w.slices[t];
        if (s.kind != Slice::Cup) continue;
        if (seg[t + 1][s.pos + 1] != -2) continue;
        int comp = static_cast<int>(tr.components.size());
        tr.components.push_back({});
        hits.emplace_back();
        tr.components.back().closed = true;
        WalkState start{t + 1, s.pos + 1, 1};
        WalkState st = start;
        mark(st, comp);
        PassHit h;
        for (;;) {
            if (!step(w, L, st, h)) throw InternalError("loop reached a boundary");
            if (h.slice >= 0) record(h, comp, st.dir);
            if (st == start) break;
            mark(st, comp);
        }
    }
    for (int t = 0; t <= L; ++t)
        for (int p = 0; p < widths[t]; ++p)
            if (seg[t][p] == -2) throw InternalError("untraced segment");

    for (std::size_t c = 0; c < tr.components.size(); ++c) {
        StrandComponent& comp = tr.components[c];
        for (const RawHit& rh : hits[c]) {
            const Slice& s = w.slices[rh.slice];
            const CrossingInfo& ci = tr.crossings[rh.slice];
            int over_pass = s.sign > 0 ? 0 : 1;
            CrossingEvent ev;
            ev.slice = rh.slice;
            ev.partner = rh.pass == 0 ? ci.comp_b : ci.comp_a;
            ev.over = rh.pass == over_pass;
            ev.upward = rh.dir > 0;
            if (ci.comp_a >= 0 && ci.comp_b >= 0) ev.sign = s.sign * ci.dir_a * ci.dir_b;
            comp.events.push_back(ev);
            if (ev.partner == -1) comp.pole_list.push_back(ev.over ? '+' : '-');
        }
        comp.winding = pole_list_winding(comp.pole_list, comp.closed);
    }
    for (int t = 0; t < L; ++t) {
        const Slice& s = w.slices[t];
        if (s.kind != Slice::Cross) continue;
        const CrossingInfo& ci = tr.crossings[t];
        if (ci.comp_a >= 0 && ci.comp_a == ci.comp_b)
            tr.components[ci.comp_a].self_writhe += s.sign * ci.dir_a * ci.dir_b;
    }
    if (seg_out) *seg_out = std::move(seg);
    return tr;
}

}  // namespace

StrandTrace trace_strands(const TangleWord& w) {
    word_validate(w);
    return trace_impl(w, nullptr);
}

ColoredConnector traced_connector(const TangleWord& w, const StrandTrace& t) {
    if (t.n_top != t.n_bottom) throw UserError("SizeMismatch", "connector needs an (n,n) word");
    (void)w;
    Connector c;
    c.n = t.n_top;
    c.partner.assign(2 * c.n + 1, 0);
    for (const auto& comp : t.components) {
        if (comp.closed) continue;
        c.partner[comp.start] = comp.end;
        c.partner[comp.end] = comp.start;
    }
    ColoredConnector cc(c);
    for (const auto& comp : t.components)
        if (!comp.closed) cc.color[comp.start] = comp.winding;
    return cc;
}

namespace {

/** Slice index of the first violating ordinary crossing in traversal order, or -1. */
int first_violation(const TangleWord& w, const StrandTrace& t) {
    int best = -1;
    long best_step = -1;
    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        const Slice& sl = w.slices[s];
        if (sl.kind != Slice::Cross) continue;
        const CrossingInfo& ci = t.crossings[s];
        if (ci.comp_a < 0 || ci.comp_b < 0) continue;
        int first_pass = ci.first_a < ci.first_b ? 0 : 1;
        int over_pass = sl.sign > 0 ? 0 : 1;
        if (first_pass == over_pass) continue;
        long st = std::min(ci.first_a, ci.first_b);
        if (best < 0 || st < best_step) {
            best = static_cast<int>(s);
            best_step = st;
        }
    }
    return best;
}

}  // namespace

bool is_descending(const TangleWord& w, const StrandTrace& t) { return first_violation(w, t) < 0; }

bool is_descending(const TangleWord& w) { return is_descending(w, trace_strands(w)); }

Guard& Guard::global() {
    static Guard g;
    return g;
}

void Guard::check(std::size_t live) const {
    if (live > max_terms)
        throw GuardError("TermExplosion", std::to_string(live) + " live terms exceed the cap of " +
                                               std::to_string(max_terms));
}

namespace {

TangleWord replace_slice(const TangleWord& w, int s, const std::vector<Slice>& with) {
    TangleWord r;
    r.n_bottom = w.n_bottom;
    r.slices.reserve(w.slices.size() + with.size());
    r.slices.insert(r.slices.end(), w.slices.begin(), w.slices.begin() + s);
    r.slices.insert(r.slices.end(), with.begin(), with.end());
    r.slices.insert(r.slices.end(), w.slices.begin() + s + 1, w.slices.end());
    return r;
}

void make_descending_rec(const TangleWord& w, const RingElem& coef,
                         std::map<std::string, std::pair<RingElem, TangleWord>>& acc) {
    StrandTrace t = trace_impl(w, nullptr);
    int v = first_violation(w, t);
    if (v < 0) {
        auto key = w.to_string();
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, std::make_pair(coef, w));
        } else {
            it->second.first += coef;
        }
        Guard::global().check(acc.size());
        return;
    }
    const Slice sl = w.slices[v];
    TangleWord switched = w;
    switched.slices[v].sign = -sl.sign;
    RingElem zc = RingElem::z(1) * RingElem(sl.sign) * coef;
    make_descending_rec(switched, coef, acc);
    make_descending_rec(replace_slice(w, v, {Slice::cap(sl.pos), Slice::cup(sl.pos)}), zc, acc);
    make_descending_rec(replace_slice(w, v, {}), -zc, acc);
}

}  // namespace

WordSum make_descending(const TangleWord& w) {
    word_validate(w);
    std::map<std::string, std::pair<RingElem, TangleWord>> acc;
    make_descending_rec(w, RingElem::one(), acc);
    WordSum out;
    for (auto& [k, v] : acc)
        if (!v.first.is_zero()) out.push_back(v);
    return out;
}

namespace {

class OrdinaryMemo {
public:
    bool get(const std::string& k, OrdinaryResult& out) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(k);
        if (it == memo_.end()) return false;
        out = it->second;
        return true;
    }
    void put(const std::string& k, const OrdinaryResult& v) {
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(k, v);
    }

private:
    std::mutex mu_;
    std::unordered_map<std::string, OrdinaryResult> memo_;
};

OrdinaryMemo& ordinary_memo() {
    static OrdinaryMemo m;
    return m;
}

void add_into(OrdinaryResult& acc, const OrdinaryResult& src, const RingElem& c) {
    for (const auto& [d, x] : src) {
        RingElem v = x * c;
        auto it = acc.find(d);
        if (it == acc.end()) {
            if (!v.is_zero()) acc.emplace(d, std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

OrdinaryResult normalize_ordinary_rec(const TangleWord& w) {
    std::string key = w.to_string();
    OrdinaryResult cached;
    if (ordinary_memo().get(key, cached)) return cached;
    StrandTrace t = trace_impl(w, nullptr);
    int v = first_violation(w, t);
    OrdinaryResult out;
    if (v < 0) {
        int loops = 0, writhe = 0;
        for (const auto& c : t.components) {
            writhe += c.self_writhe;
            loops += c.closed;
        }
        Connector c;
        c.n = t.n_top;
        c.partner.assign(2 * c.n + 1, 0);
        for (const auto& comp : t.components) {
            if (comp.closed) continue;
            c.partner[comp.start] = comp.end;
            c.partner[comp.end] = comp.start;
        }
        out.emplace(c, RingElem::lambda(kKinkSign * writhe) * RingElem::delta(1).pow(loops));
    } else {
        const Slice sl = w.slices[v];
        TangleWord switched = w;
        switched.slices[v].sign = -sl.sign;
        RingElem zc = RingElem::z(1) * RingElem(sl.sign);
        out = normalize_ordinary_rec(switched);
        add_into(out, normalize_ordinary_rec(replace_slice(w, v, {Slice::cap(sl.pos), Slice::cup(sl.pos)})), zc);
        add_into(out, normalize_ordinary_rec(replace_slice(w, v, {})), -zc);
    }
    Guard::global().check(out.size());
    ordinary_memo().put(key, out);
    return out;
}

}  // namespace

OrdinaryResult normalize_ordinary(const TangleWord& w) {
    word_validate(w);
    if (w.has_pole_crossing()) throw UserError("AffineWord", "ordinary normalizer given a flagpole crossing");
    if (w.n_top() != w.n_bottom) throw UserError("SizeMismatch", "normalize needs an (n,n) word");
    return normalize_ordinary_rec(w);
}

TangleWord remove_components(const TangleWord& w, const StrandTrace& t, const std::vector<int>& comps) {
    std::vector<std::vector<int>> seg;
    (void)t;
    trace_impl(w, &seg);
    std::vector<char> drop(t.components.size(), 0);
    for (int c : comps) drop.at(c) = 1;
    auto removed = [&](int lv, int p) { int c = seg[lv][p]; return c >= 0 && drop[c]; };
    auto newpos = [&](int lv, int p) {
        int k = 0;
        for (int q = 0; q < p; ++q) k += removed(lv, q);
        return p - k;
    };
    TangleWord r;
    r.n_bottom = w.n_bottom;
    for (int p = 0; p < static_cast<int>(seg[0].size()); ++p) r.n_bottom -= removed(0, p);
    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        const Slice& sl = w.slices[s];
        int lv = static_cast<int>(s);
        switch (sl.kind) {
            case Slice::Cross:
                if (removed(lv, sl.pos) || removed(lv, sl.pos + 1)) continue;
                r.slices.push_back(Slice::cross(newpos(lv, sl.pos), sl.sign));
                break;
            case Slice::Cap:
                if (removed(lv, sl.pos)) continue;
                r.slices.push_back(Slice::cap(newpos(lv, sl.pos)));
                break;
            case Slice::Cup:
                if (removed(lv + 1, sl.pos)) continue;
                r.slices.push_back(Slice::cup(newpos(lv + 1, sl.pos)));
                break;
        }
    }
    return r;
}

std::pair<RingElem, TangleWord> evaluate_closed_loops(const TangleWord& w, const RingContext& ctx) {
    StrandTrace t = trace_strands(w);
    if (!is_descending(w, t)) throw UserError("NotDescending", "loop evaluation needs a descending word");
    RingElem factor = RingElem::one();
    std::vector<int> loops;
    for (std::size_t c = 0; c < t.components.size(); ++c) {
        const auto& comp = t.components[c];
        if (!comp.closed) continue;
        loops.push_back(static_cast<int>(c));
        RingElem v = comp.winding == 0  ? RingElem::delta(1)
                     : comp.winding > 0 ? ctx.q(comp.winding)
                                        : ctx.fpoly(-comp.winding);
        factor *= RingElem::lambda(kKinkSign * comp.self_writhe) * v;
    }
    return {factor, remove_components(w, t, loops)};
}

TangleWord apply_symmetry(Symmetry kind, const TangleWord& w) {
    std::vector<int> widths = w.widths();
    TangleWord r;
    switch (kind) {
        case Symmetry::Alpha:
            r.n_bottom = widths.back() - 1;
            for (auto it = w.slices.rbegin(); it != w.slices.rend(); ++it) {
                Slice s = *it;
                if (s.kind == Slice::Cap) {
                    s.kind = Slice::Cup;
                } else if (s.kind == Slice::Cup) {
                    s.kind = Slice::Cap;
                }
                r.slices.push_back(s);
            }
            return r;
        case Symmetry::Beta:
            r = w;
            for (auto& s : r.slices)
                if (s.kind == Slice::Cross) s.sign = -s.sign;
            return r;
        case Symmetry::Rho:
            if (w.has_pole_crossing()) throw UserError("AffineWord", "rho applies to flagpole-free words only");
            r.n_bottom = w.n_bottom;
            for (std::size_t t = 0; t < w.slices.size(); ++t) {
                Slice s = w.slices[t];
                int m = widths[t] - 1;
                switch (s.kind) {
                    case Slice::Cross: s.pos = m - s.pos; break;
                    case Slice::Cap: s.pos = m - s.pos; break;
                    case Slice::Cup: s.pos = m + 2 - s.pos; break;
                }
                r.slices.push_back(s);
            }
            return r;
    }
    return r;
}

RingElem beta_ring(const RingElem& x, const RingContext& ctx) {
    RingSubstitution s{RingElem::lambda(-1), RingElem::lambda(1), -RingElem::z(1), RingElem::delta(1),
                       RingElem::delta(-1), {}};
    int m = x.max_q_index();
    for (int r = 1; r <= m; ++r) s.q[r] = ctx.fpoly(r);
    return substitute(x, s);
}

TangleWord gen_word_to_tangle(int n, const GenWord& g) {
    TangleWord w{n, {}};
    for (const Gen& x : g) {
        switch (x.kind) {
            case Gen::G: w.slices.push_back(Slice::cross(x.i, 1)); break;
            case Gen::Ginv: w.slices.push_back(Slice::cross(x.i, -1)); break;
            case Gen::E:
                w.slices.push_back(Slice::cap(x.i));
                w.slices.push_back(Slice::cup(x.i));
                break;
            case Gen::X:
                w.slices.push_back(Slice::cross(0, 1));
                w.slices.push_back(Slice::cross(0, 1));
                break;
            case Gen::Xinv:
                w.slices.push_back(Slice::cross(0, -1));
                w.slices.push_back(Slice::cross(0, -1));
                break;
        }
    }
    return w;
}

namespace {

/** Pole-straightened operation at ordinary width `width` (before the op). */
struct PoleOp {
    enum Kind { Gen_, Cap, Cup } kind;
    Gen gen;
    int pos = 0;
    int width = 0;
};

void push_conjugate(std::vector<PoleOp>& ops, int k, bool positive, int width) {
    // sigma_k^{-1} ... sigma_1^{-1} X^{+-1} sigma_1 ... sigma_k
    for (int j = k; j >= 1; --j) ops.push_back({PoleOp::Gen_, {Gen::Ginv, j}, 0, width});
    ops.push_back({PoleOp::Gen_, {positive ? Gen::X : Gen::Xinv, 1}, 0, width});
    for (int j = 1; j <= k; ++j) ops.push_back({PoleOp::Gen_, {Gen::G, j}, 0, width});
}

std::vector<PoleOp> straighten_pole(const TangleWord& w) {
    std::vector<PoleOp> ops;
    std::vector<int> widths = w.widths();
    int p = 0;
    for (std::size_t t = 0; t < w.slices.size(); ++t) {
        const Slice& s = w.slices[t];
        int m = widths[t] - 1;
        switch (s.kind) {
            case Slice::Cross:
                if (s.pos == p) {
                    if (s.sign < 0) push_conjugate(ops, p, false, m);
                    p = p + 1;
                } else if (s.pos + 1 == p) {
                    if (s.sign > 0) push_conjugate(ops, p - 1, true, m);
                    p = p - 1;
                } else {
                    int j = s.pos < p ? s.pos + 1 : s.pos;
                    ops.push_back({PoleOp::Gen_, {s.sign > 0 ? Gen::G : Gen::Ginv, j}, 0, m});
                }
                break;
            case Slice::Cap:
                if (s.pos + 1 < p) {
                    ops.push_back({PoleOp::Cap, {}, s.pos + 1, m});
                    p -= 2;
                } else {
                    ops.push_back({PoleOp::Cap, {}, s.pos, m});
                }
                break;
            case Slice::Cup:
                if (s.pos <= p) {
                    ops.push_back({PoleOp::Cup, {}, s.pos + 1, m});
                    p += 2;
                } else {
                    ops.push_back({PoleOp::Cup, {}, s.pos, m});
                }
                break;
        }
    }
    return ops;
}

}  // namespace

FramedWord frame_word(const TangleWord& w) {
    word_validate(w);
    std::vector<int> widths = w.widths();
    FramedWord f;
    f.n = w.n_bottom;
    if (widths.back() - 1 != f.n) throw UserError("SizeMismatch", "framing needs an (n,n) word");
    int M = 0;
    for (int x : widths) M = std::max(M, x - 1);
    f.frame = M;
    for (int j = f.n + 1; j < M; j += 2) f.gens.push_back({Gen::E, j});
    for (const PoleOp& op : straighten_pole(w)) {
        const int m = op.width;
        switch (op.kind) {
            case PoleOp::Gen_: f.gens.push_back(op.gen); break;
            case PoleOp::Cap: {
                int a = op.pos;
                while (a + 1 < m) {
                    f.gens.push_back({Gen::Ginv, a + 1});
                    f.gens.push_back({Gen::Ginv, a});
                    ++a;
                }
                f.gens.push_back({Gen::E, m - 1});
                break;
            }
            case PoleOp::Cup: {
                f.gens.push_back({Gen::E, m + 1});
                f.delta_power -= 1;
                int a = m + 1;
                while (a > op.pos) {
                    f.gens.push_back({Gen::G, a - 1});
                    f.gens.push_back({Gen::G, a});
                    --a;
                }
                break;
            }
        }
    }
    return f;
}

}  // namespace tsk
