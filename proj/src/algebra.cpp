#include "torus_skein/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "torus_skein/engine.hpp"
#include "torus_skein/layout.hpp"

namespace tsk {

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

void require_size(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.n() != y.n())
        throw UserError("SizeMismatch", "sizes " + std::to_string(x.n()) + " and " + std::to_string(y.n()));
}

void check_gen_index(int n, const Gen& g) {
    if (g.kind == Gen::X || g.kind == Gen::Xinv) {
        if (n < 1) throw UserError("IndexOutOfRange", "x1 needs n >= 1");
        return;
    }
    if (g.i < 1 || g.i >= n)
        throw UserError("IndexOutOfRange", "generator index " + std::to_string(g.i) + " at n=" + std::to_string(n));
}

/** Restricts a size-M connector whose positions above k are parked caps on both rows. */
Connector strip_connector(const Connector& d, int k) {
    const int M = d.n;
    auto bottom_k = [&](int j) { return 2 * k + 1 - j; };
    Connector r;
    r.n = k;
    r.partner.assign(2 * k + 1, 0);
    for (int p = k + 1; p <= M; p += 2) {
        if (p + 1 > M || d.partner[p] != p + 1 || d.partner[d.bottom(p)] != d.bottom(p + 1))
            throw InternalError("parked caps missing after framing");
    }
    auto map = [&](int v) {
        if (d.is_top(v)) {
            if (v > k) throw InternalError("strand reaches a parked position");
            return v;
        }
        int j = d.position(v);
        if (j > k) throw InternalError("strand reaches a parked position");
        return bottom_k(j);
    };
    for (int i = 1; i <= k; ++i) {
        r.partner[i] = map(d.partner[i]);
        r.partner[bottom_k(i)] = map(d.partner[d.bottom(i)]);
    }
    r.validate();
    return r;
}

/** Element of size k from a size-M element whose triples carry parked caps above k. */
AlgebraElement strip_parked(const AlgebraElement& x, int k) {
    AlgebraElement out(k);
    for (const auto& [t, c] : x.terms()) {
        for (int j = k; j < t.n(); ++j) {
            if (t.mu[j] != 0 || t.nu[j] != 0) throw InternalError("winding on a parked cap");
        }
        BasisTriple s{std::vector<int>(t.mu.begin(), t.mu.begin() + k), strip_connector(t.d, k),
                      std::vector<int>(t.nu.begin(), t.nu.begin() + k)};
        out.add(s, c);
    }
    return out;
}

void check_bound(const AlgebraElement& x, const RingContext& ctx) {
    if (int m = x.max_q_index(); m > 0) ctx.check_index(m);
}

GenWord x_power_word(int j, int k) {
    GenWord w;
    const bool pos = k > 0;
    for (int rep = 0; rep < std::abs(k); ++rep) {
        for (int a = j - 1; a >= 1; --a) w.push_back({pos ? Gen::G : Gen::Ginv, a});
        w.push_back({pos ? Gen::X : Gen::Xinv, 1});
        for (int a = 1; a <= j - 1; ++a) w.push_back({pos ? Gen::G : Gen::Ginv, a});
    }
    return w;
}

}  // namespace

BasisTriple BasisTriple::plain(const Connector& d) {
    return BasisTriple{std::vector<int>(d.n, 0), d, std::vector<int>(d.n, 0)};
}

bool BasisTriple::valid() const {
    const int n = d.n;
    if (static_cast<int>(mu.size()) != n || static_cast<int>(nu.size()) != n) return false;
    for (int j = 1; j <= n; ++j)
        if (mu[j - 1] != 0 && !d.is_initial(d.bottom(j))) return false;
    for (int i = 1; i <= n; ++i)
        if (nu[i - 1] != 0 && !d.is_initial(i)) return false;
    return true;
}

int BasisTriple::max_winding() const {
    int m = 0;
    for (int v : mu) m = std::max(m, std::abs(v));
    for (int v : nu) m = std::max(m, std::abs(v));
    return m;
}

std::string BasisTriple::to_string() const {
    return join_ints(mu) + "|" + d.to_string() + "|" + join_ints(nu);
}

AlgebraElement AlgebraElement::identity(int n) { return basis(BasisTriple::plain(Connector::identity(n))); }

AlgebraElement AlgebraElement::basis(const BasisTriple& t, const RingElem& c) {
    AlgebraElement x(t.n());
    x.add(t, c);
    return x;
}

AlgebraElement AlgebraElement::scalar(int n, const RingElem& c) {
    return basis(BasisTriple::plain(Connector::identity(n)), c);
}

RingElem AlgebraElement::coeff(const BasisTriple& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? RingElem::zero() : it->second;
}

void AlgebraElement::add(const BasisTriple& t, const RingElem& c) {
    if (t.n() != n_) throw UserError("SizeMismatch", "triple of size " + std::to_string(t.n()));
    if (c.is_zero()) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void AlgebraElement::add_scaled(const AlgebraElement& o, const RingElem& c) {
    if (o.n_ != n_) throw UserError("SizeMismatch", "adding elements of different size");
    if (c.is_zero()) return;
    for (const auto& [t, x] : o.terms_) add(t, x * c);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    add_scaled(o, RingElem::one());
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    add_scaled(o, RingElem(-1));
    return *this;
}

AlgebraElement AlgebraElement::scaled(const RingElem& c) const {
    AlgebraElement r(n_);
    r.add_scaled(*this, c);
    return r;
}

int AlgebraElement::max_q_index() const {
    int m = 0;
    for (const auto& [t, c] : terms_) m = std::max(m, c.max_q_index());
    return m;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : terms_) {
        if (!out.empty()) out += "\n";
        std::string cs = c.to_string();
        if (c.size() > 1) cs = "(" + cs + ")";
        out += cs + " * [" + t.to_string() + "]";
    }
    return out;
}

AlgebraElement parse_element_text(int n, std::string_view text, const RingContext& ctx) {
    AlgebraElement out(n);
    std::size_t line_start = 0;
    bool any = false;
    while (line_start <= text.size()) {
        std::size_t end = text.find('\n', line_start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(line_start, end - line_start);
        const std::size_t offset = line_start;
        line_start = end + 1;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        std::size_t lead = 0;
        while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
        line.remove_prefix(lead);
        if (line.empty()) continue;
        if (line == "0") {
            any = true;
            continue;
        }
        std::size_t bracket = line.rfind('[');
        std::size_t star = bracket == std::string_view::npos ? bracket : line.rfind('*', bracket);
        if (bracket == std::string_view::npos || star == std::string_view::npos || line.back() != ']')
            throw ParseError(offset + lead, "expected '<coeff> * [mu|connector|nu]'");
        std::string_view coeff = line.substr(0, star);
        while (!coeff.empty() && coeff.back() == ' ') coeff.remove_suffix(1);
        if (coeff.size() >= 2 && coeff.front() == '(' && coeff.back() == ')') coeff = coeff.substr(1, coeff.size() - 2);
        RingElem c = ctx.parse(coeff);
        std::string_view body = line.substr(bracket + 1, line.size() - bracket - 2);
        std::size_t bar1 = body.find('|');
        std::size_t bar2 = bar1 == std::string_view::npos ? bar1 : body.find('|', bar1 + 1);
        if (bar2 == std::string_view::npos) throw ParseError(offset + lead + bracket, "expected two '|' separators");
        auto ints = [&](std::string_view s) {
            std::vector<int> v;
            std::string str(s);
            std::stringstream ss(str);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    v.push_back(std::stoi(item, &used));
                    if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
                } catch (const std::exception&) {
                    throw ParseError(offset + lead + bracket, "bad exponent '" + item + "'");
                }
            }
            return v;
        };
        BasisTriple t{ints(body.substr(0, bar1)), parse_connector(n, body.substr(bar1 + 1, bar2 - bar1 - 1)).conn,
                      ints(body.substr(bar2 + 1))};
        if (static_cast<int>(t.mu.size()) != n || static_cast<int>(t.nu.size()) != n)
            throw UserError("SizeMismatch", "exponent vectors must have length " + std::to_string(n));
        if (!t.valid()) throw UserError("InvalidTriple", "exponent at a terminal vertex: " + t.to_string());
        out.add(t, c);
        any = true;
    }
    if (!any) throw ParseError(0, "empty element text");
    return out;
}

AlgebraElement mul_gen(const AlgebraElement& x, const Gen& g, const RingContext& ctx) {
    check_gen_index(x.n(), g);
    AlgebraElement out(x.n());
    for (const auto& [t, c] : x.terms()) {
        out.add_scaled(engine::times_gen(t.mu, t.d, t.nu, g, ctx), c);
        Guard::global().check(out.size());
    }
    return out;
}

GenWord triple_word(const BasisTriple& t) {
    GenWord w;
    for (int j = 1; j <= t.n(); ++j) {
        GenWord p = x_power_word(j, t.mu[j - 1]);
        w.insert(w.end(), p.begin(), p.end());
    }
    const GenWord& b = basis_word(t.d);
    w.insert(w.end(), b.begin(), b.end());
    for (int i = 1; i <= t.n(); ++i) {
        GenWord p = x_power_word(i, t.nu[i - 1]);
        w.insert(w.end(), p.begin(), p.end());
    }
    return w;
}

AlgebraElement gen_product(int n, const GenWord& w, const RingContext& ctx) {
    AlgebraElement cur = AlgebraElement::identity(n);
    for (const Gen& g : w) cur = mul_gen(cur, g, ctx);
    return cur;
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y, const RingContext& ctx) {
    require_size(x, y);
    AlgebraElement out(x.n());
    for (const auto& [t, c] : y.terms()) {
        AlgebraElement cur = x;
        for (const Gen& g : triple_word(t)) cur = mul_gen(cur, g, ctx);
        out.add_scaled(cur, c);
        Guard::global().check(out.size());
    }
    check_bound(out, ctx);
    return out;
}

AlgebraElement elem_g(int n, int i, int sign, const RingContext& ctx) {
    return gen_product(n, {{sign > 0 ? Gen::G : Gen::Ginv, i}}, ctx);
}

AlgebraElement elem_e(int n, int i) {
    check_gen_index(n, {Gen::E, i});
    std::vector<std::pair<int, int>> pairs;
    for (int j = 1; j <= n; ++j) {
        if (j == i) {
            pairs.push_back({i, i + 1});
            pairs.push_back({2 * n + 1 - (i + 1), 2 * n + 1 - i});
        } else if (j != i + 1) {
            pairs.push_back({j, 2 * n + 1 - j});
        }
    }
    return AlgebraElement::basis(BasisTriple::plain(Connector::from_pairs(n, pairs)));
}

AlgebraElement elem_x1(int n, int power) {
    check_gen_index(n, {Gen::X, 1});
    BasisTriple t = BasisTriple::plain(Connector::identity(n));
    t.nu[0] = power;
    return AlgebraElement::basis(t);
}

AlgebraElement elem_x(int n, int r, int power, const RingContext& ctx) {
    if (r < 1 || r > n) throw UserError("IndexOutOfRange", "x index " + std::to_string(r));
    return gen_product(n, x_power_word(r, power), ctx);
}

AlgebraElement elem_xprime(int n, int r, int power, const RingContext& ctx) {
    if (r < 1 || r > n) throw UserError("IndexOutOfRange", "x' index " + std::to_string(r));
    GenWord w;
    const bool pos = power > 0;
    for (int rep = 0; rep < std::abs(power); ++rep) {
        for (int a = r - 1; a >= 1; --a) w.push_back({Gen::G, a});
        w.push_back({pos ? Gen::X : Gen::Xinv, 1});
        for (int a = 1; a <= r - 1; ++a) w.push_back({Gen::Ginv, a});
    }
    return gen_product(n, w, ctx);
}

AlgebraElement elem_Fk(int k) {
    if (k < 1) throw UserError("IndexOutOfRange", "F_k needs k >= 1");
    const int n = 2 * k;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i) {
        pairs.push_back({i, n + 1 - i});
        pairs.push_back({2 * n + 1 - i, 2 * n + 1 - (n + 1 - i)});
    }
    return AlgebraElement::basis(BasisTriple::plain(Connector::from_pairs(n, pairs)));
}

std::vector<int> word_permutation(int n, const std::vector<int>& word) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    for (int i : word) {
        if (i < 1 || i >= n) throw UserError("IndexOutOfRange", "transposition index " + std::to_string(i));
        std::swap(p[i - 1], p[i]);
    }
    return p;
}

AlgebraElement perm_braid(int n, const std::vector<int>& word, const RingContext& ctx) {
    std::vector<int> p = word_permutation(n, word);
    int inversions = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) inversions += p[a] > p[b];
    if (inversions != static_cast<int>(word.size()))
        throw UserError("NotReduced", "word of length " + std::to_string(word.size()) + " for a permutation with " +
                                          std::to_string(inversions) + " inversions");
    GenWord w;
    for (int i : word) w.push_back({Gen::G, i});
    return gen_product(n, w, ctx);
}

AlgebraElement fk(int k, FkForm form, int n, const RingContext& ctx) {
    if (k < 1) throw UserError("IndexOutOfRange", "f_k needs k >= 1");
    if (n < 2 * k) throw UserError("SizeTooSmall", "f_" + std::to_string(k) + " needs n >= " + std::to_string(2 * k));
    if (form == FkForm::Diamond) {
        GenWord w;
        for (int j = 0; j < k; ++j)
            for (int a = k - j; a <= 2 * k - 1 - j; ++a) w.push_back({Gen::E, a});
        return gen_product(n, w, ctx);
    }
    if (k == 1) return elem_e(n, 1);
    GenWord left, right;
    for (int a = 1; a <= 2 * k - 2; ++a) left.push_back({Gen::G, a});
    right.push_back({Gen::E, 2 * k - 1});
    for (int a = 2 * k - 2; a >= 1; --a) right.push_back({Gen::G, a});
    AlgebraElement out = mul(gen_product(n, left, ctx), fk(k - 1, FkForm::Recursive, n, ctx), ctx);
    for (const Gen& g : right) out = mul_gen(out, g, ctx);
    return out;
}

AlgebraElement include(const AlgebraElement& x) {
    const int n = x.n();
    AlgebraElement out(n + 1);
    for (const auto& [t, c] : x.terms()) {
        ColoredConnector cc = include_connector(ColoredConnector(t.d));
        BasisTriple s{t.mu, cc.conn, t.nu};
        s.mu.push_back(0);
        s.nu.push_back(0);
        out.add(s, c);
    }
    return out;
}

AlgebraElement shift(const AlgebraElement& x, const RingContext& ctx) {
    const int n = x.n();
    GenWord w, winv;
    for (int a = 1; a <= n; ++a) w.push_back({Gen::G, a});
    for (int a = n; a >= 1; --a) winv.push_back({Gen::Ginv, a});
    AlgebraElement out = mul(gen_product(n + 1, w, ctx), include(x), ctx);
    for (const Gen& g : winv) out = mul_gen(out, g, ctx);
    return out;
}

AlgebraElement apply_alpha(const AlgebraElement& x, const RingContext& ctx) {
    AlgebraElement out(x.n());
    for (const auto& [t, c] : x.terms()) {
        GenWord w = triple_word(t);
        std::reverse(w.begin(), w.end());
        out.add_scaled(gen_product(x.n(), w, ctx), c);
    }
    return out;
}

AlgebraElement expect(const AlgebraElement& x, const RingContext& ctx) {
    const int n = x.n();
    if (n < 1) throw UserError("IndexOutOfRange", "conditional expectation needs n >= 1");
    AlgebraElement e = elem_e(n + 1, n);
    AlgebraElement sandwich = mul_gen(mul(e, include(x), ctx), {Gen::E, n}, ctx);
    return strip_parked(sandwich, n - 1).scaled(RingElem::delta(-1));
}

RingElem trace(const AlgebraElement& x, const RingContext& ctx) {
    AlgebraElement cur = x;
    while (cur.n() > 0) cur = expect(cur, ctx);
    return cur.coeff(BasisTriple::plain(Connector::identity(0)));
}

ColoredConnector triple_connector(const BasisTriple& t) {
    if (!t.valid()) throw InternalError("connector of an invalid triple");
    ColoredConnector cc(t.d);
    for (int i = 1; i <= t.n(); ++i)
        if (t.nu[i - 1] != 0) cc.color[i] = t.nu[i - 1];
    for (int j = 1; j <= t.n(); ++j)
        if (t.mu[j - 1] != 0) cc.color[t.d.bottom(j)] = -t.mu[j - 1];
    return cc;
}

BrauerElem connector_map(const AlgebraElement& x) {
    BrauerElem out(x.n());
    for (const auto& [t, c] : x.terms()) out.add(triple_connector(t), e_specialize(c));
    return out;
}

AlgebraElement normalize(const TangleWord& w, const RingContext& ctx) {
    word_validate(w);
    if (w.n_top() != w.n_bottom) throw UserError("SizeMismatch", "normalize needs an (n,n) word");
    const int n = w.n_bottom;
    if (!w.has_pole_crossing()) {
        AlgebraElement out(n);
        for (const auto& [d, c] : normalize_ordinary(w)) out.add(BasisTriple::plain(d), c);
        return out;
    }
    static std::mutex mu;
    static std::map<std::string, AlgebraElement> memo;
    const std::string key = w.to_string();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) {
            check_bound(it->second, ctx);
            return it->second;
        }
    }
    FramedWord f = frame_word(w);
    AlgebraElement framed = gen_product(f.frame, f.gens, ctx);
    AlgebraElement out = strip_parked(framed, n).scaled(RingElem::delta(f.delta_power));
    check_bound(out, ctx);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, std::move(out)).first->second;
}

AlgebraElement transport_windings(const TangleWord& w, const RingContext& ctx) {
    word_validate(w);
    StrandTrace t = trace_strands(w);
    for (const StrandComponent& c : t.components)
        if (c.closed) throw UserError("ClosedComponent", "transport expects a word without closed loops");
    if (!is_descending(w, t)) throw UserError("NotDescending", "transport expects a totally descending word");
    return normalize(w, ctx);
}

std::vector<BasisTriple> basis_enumerate(int n, int cutoff) {
    if (cutoff < 0) throw UserError("IndexOutOfRange", "cutoff must be >= 0");
    std::vector<BasisTriple> out;
    for (const Connector& d : enumerate_connectors(n)) {
        std::vector<std::pair<bool, int>> slots;  // (bottom, position)
        for (int i = 1; i <= n; ++i)
            if (d.is_initial(i)) slots.push_back({false, i});
        for (int j = 1; j <= n; ++j)
            if (d.is_initial(d.bottom(j))) slots.push_back({true, j});
        std::vector<int> values(slots.size(), -cutoff);
        for (;;) {
            BasisTriple t = BasisTriple::plain(d);
            for (std::size_t s = 0; s < slots.size(); ++s)
                (slots[s].first ? t.mu : t.nu)[slots[s].second - 1] = values[s];
            out.push_back(t);
            std::size_t s = 0;
            while (s < values.size() && values[s] == cutoff) values[s++] = -cutoff;
            if (s == values.size()) break;
            ++values[s];
        }
    }
    return out;
}

std::map<BasisTriple, mpq_class> evaluate_element(const AlgebraElement& x, const NumericPoint& p) {
    std::map<BasisTriple, mpq_class> out;
    for (const auto& [t, c] : x.terms()) {
        mpq_class v = evaluate(c, p);
        if (v != 0) out.emplace(t, v);
    }
    return out;
}

int ideal_rank(int n, int k, int cutoff, std::uint64_t seed, const RingContext& ctx) {
    if (k < 0 || n < 2 * k) throw UserError("SizeTooSmall", "ideal_rank needs n >= 2k");
    GenWord gw;
    for (int j = 1; j <= k; ++j) gw.push_back({Gen::E, 2 * j - 1});
    const std::vector<BasisTriple> basis = basis_enumerate(n, cutoff);
    std::mt19937_64 rng(seed);
    NumericPoint pt = ctx.random_generic_point(rng, ctx.q_index_bound());
    std::map<BasisTriple, std::size_t> column;
    std::vector<std::map<BasisTriple, mpq_class>> rows;
    for (const BasisTriple& a : basis) {
        AlgebraElement left = AlgebraElement::basis(a);
        for (const Gen& g : gw) left = mul_gen(left, g, ctx);
        for (const BasisTriple& b : basis) {
            AlgebraElement prod = mul(left, AlgebraElement::basis(b), ctx);
            rows.push_back(evaluate_element(prod, pt));
            for (const auto& [t, v] : rows.back()) column.emplace(t, column.size());
        }
    }
    std::vector<std::vector<mpq_class>> m;
    for (const auto& r : rows) {
        std::vector<mpq_class> row(column.size(), 0);
        for (const auto& [t, v] : r) row[column.at(t)] = v;
        m.push_back(std::move(row));
    }
    return rational_rank(std::move(m));
}

}  // namespace tsk
