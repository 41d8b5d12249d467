#include "torus_skein/brauer.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace tsk {

Connector Connector::identity(int n) {
    Connector c;
    c.n = n;
    c.partner.assign(2 * n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        c.partner[i] = 2 * n + 1 - i;
        c.partner[2 * n + 1 - i] = i;
    }
    return c;
}

Connector Connector::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    Connector c;
    c.n = n;
    c.partner.assign(2 * n + 1, 0);
    for (auto [a, b] : pairs) {
        if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b)
            throw UserError("InvalidConnector", "vertex out of range");
        if (c.partner[a] || c.partner[b]) throw UserError("InvalidConnector", "vertex matched twice");
        c.partner[a] = b;
        c.partner[b] = a;
    }
    c.validate();
    return c;
}

void Connector::validate() const {
    if (static_cast<int>(partner.size()) != 2 * n + 1)
        throw UserError("InvalidConnector", "partner table has wrong size");
    for (int v = 1; v <= 2 * n; ++v) {
        int p = partner[v];
        if (p < 1 || p > 2 * n || p == v || partner[p] != v)
            throw UserError("InvalidConnector", "not a fixed-point-free involution");
    }
}

int Connector::crossing_number() const {
    int count = 0;
    for (int a = 1; a <= 2 * n; ++a) {
        int b = partner[a];
        if (b < a) continue;
        for (int c = a + 1; c < b; ++c) {
            int d = partner[c];
            if (d > b) ++count;
        }
    }
    return count;
}

int Connector::through_count() const {
    int t = 0;
    for (int i = 1; i <= n; ++i) t += partner[i] > n;
    return t;
}

std::string Connector::to_string() const {
    std::string out;
    for (int v = 1; v <= 2 * n; ++v) {
        if (partner[v] > v) out += "(" + std::to_string(v) + " " + std::to_string(partner[v]) + ")";
    }
    return out;
}

ColoredConnector::ColoredConnector(Connector c) : conn(std::move(c)) {
    color.assign(2 * conn.n + 1, 0);
}

int ColoredConnector::color_from(int v) const {
    int p = conn.partner[v];
    return v < p ? color[v] : -color[p];
}

void ColoredConnector::set_color_from(int v, int c) {
    int p = conn.partner[v];
    if (v < p) {
        color[v] = c;
    } else {
        color[p] = -c;
    }
}

std::string ColoredConnector::to_string() const {
    std::string out;
    for (int v = 1; v <= 2 * conn.n; ++v) {
        if (conn.partner[v] > v)
            out += "(" + std::to_string(v) + " " + std::to_string(conn.partner[v]) + "):" +
                   std::to_string(color[v]);
    }
    return out;
}

namespace {

ColoredConnector parse_connector_impl(int n, std::string_view s, bool infer) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto integer = [&](bool sign) {
        skip();
        std::size_t start = pos;
        bool neg = false;
        if (sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        std::size_t d = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (d == pos || pos - d > 9) throw ParseError(start, "expected integer");
        int v = std::stoi(std::string(s.substr(d, pos - d)));
        return neg ? -v : v;
    };
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> colors;
    for (;;) {
        skip();
        if (pos >= s.size()) break;
        if (s[pos] != '(') throw ParseError(pos, "expected '('");
        ++pos;
        int a = integer(false);
        skip();
        if (pos < s.size() && s[pos] == ',') ++pos;
        int b = integer(false);
        skip();
        if (pos >= s.size() || s[pos] != ')') throw ParseError(pos, "expected ')'");
        ++pos;
        int c = 0;
        skip();
        if (pos < s.size() && s[pos] == ':') {
            ++pos;
            c = integer(true);
        }
        pairs.emplace_back(a, b);
        colors.push_back(c);
    }
    if (infer) n = static_cast<int>(pairs.size());
    Connector conn = Connector::from_pairs(n, pairs);
    ColoredConnector cc(conn);
    for (std::size_t i = 0; i < pairs.size(); ++i) cc.set_color_from(pairs[i].first, colors[i]);
    return cc;
}

}  // namespace

ColoredConnector parse_connector(int n, std::string_view text) {
    ColoredConnector c = parse_connector_impl(n, text, false);
    if (2 * c.n() != static_cast<int>(c.conn.partner.size()) - 1)
        throw UserError("InvalidConnector", "size mismatch");
    return c;
}

ColoredConnector parse_connector_auto(std::string_view text) {
    return parse_connector_impl(0, text, true);
}

BrauerElem BrauerElem::basis(const ColoredConnector& d, RingElem coef) {
    BrauerElem e(d.n());
    e.add(d, coef);
    return e;
}

void BrauerElem::add(const ColoredConnector& d, const RingElem& c) {
    if (c.is_zero()) return;
    if (d.n() != n_) throw UserError("SizeMismatch", "connector size differs from element size");
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BrauerElem& BrauerElem::operator+=(const BrauerElem& o) {
    if (o.n_ != n_) throw UserError("SizeMismatch", "adding Brauer elements of different size");
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

BrauerElem BrauerElem::scaled(const RingElem& c) const {
    BrauerElem r(n_);
    for (const auto& [d, x] : terms_) r.add(d, x * c);
    return r;
}

std::string BrauerElem::to_string() const {
    if (terms_.empty()) return "0\n";
    std::string out;
    for (const auto& [d, c] : terms_) {
        std::string cs = c.to_string();
        if (c.size() > 1) cs = "(" + cs + ")";
        out += cs + " * " + d.to_string() + "\n";
    }
    return out;
}

namespace {

RingElem loop_value(int color, const RingContext& ctx) {
    int a = std::abs(color);
    return a == 0 ? RingElem::delta(1) : ctx.q(a);
}

}  // namespace

std::pair<ColoredConnector, RingElem> colored_compose(const ColoredConnector& x,
                                                      const ColoredConnector& y,
                                                      const RingContext& ctx) {
    if (x.n() != y.n()) throw UserError("SizeMismatch", "composing connectors of different size");
    const int n = x.n();
    const ColoredConnector* D[2] = {&x, &y};  // 0 = upper, 1 = lower
    std::vector<char> seen[2] = {std::vector<char>(2 * n + 1, 0), std::vector<char>(2 * n + 1, 0)};
    Connector rc;
    rc.n = n;
    rc.partner.assign(2 * n + 1, 0);
    ColoredConnector result(rc);
    std::vector<int> result_color(2 * n + 1, 0);

    // Walk from (d, u) until a result boundary vertex; returns (diagram, vertex, color).
    auto walk = [&](int d, int u, int& color) {
        for (;;) {
            seen[d][u] = 1;
            int v = D[d]->conn.partner[u];
            seen[d][v] = 1;
            color += D[d]->color_from(u);
            if (d == 0 && v <= n) return std::make_pair(0, v);
            if (d == 1 && v > n) return std::make_pair(1, v);
            u = 2 * n + 1 - v;
            d = 1 - d;
        }
    };

    for (int s = 1; s <= 2 * n; ++s) {
        int d = s <= n ? 0 : 1;
        if (seen[d][s]) continue;
        int color = 0;
        auto [de, e] = walk(d, s, color);
        (void)de;
        result.conn.partner[s] = e;
        result.conn.partner[e] = s;
        result_color[s] = color;
    }
    result.color.assign(2 * n + 1, 0);
    for (int s = 1; s <= 2 * n; ++s) {
        if (result.conn.partner[s] > s) result.color[s] = result_color[s];
    }
    RingElem scalar = RingElem::one();
    for (int u0 = n + 1; u0 <= 2 * n; ++u0) {
        if (seen[0][u0]) continue;
        int color = 0;
        int d = 0, u = u0;
        do {
            seen[d][u] = 1;
            int v = D[d]->conn.partner[u];
            seen[d][v] = 1;
            color += D[d]->color_from(u);
            u = 2 * n + 1 - v;
            d = 1 - d;
        } while (!(d == 0 && u == u0));
        scalar *= loop_value(color, ctx);
    }
    return {result, scalar};
}

BrauerElem brauer_mul(const BrauerElem& x, const BrauerElem& y, const RingContext& ctx) {
    if (x.n() != y.n()) throw UserError("SizeMismatch", "multiplying Brauer elements of different size");
    BrauerElem r(x.n());
    for (const auto& [dx, cx] : x.terms()) {
        for (const auto& [dy, cy] : y.terms()) {
            auto [d, s] = colored_compose(dy, dx, ctx);
            r.add(d, cx * cy * s);
        }
    }
    return r;
}

namespace {

std::pair<ColoredConnector, RingElem> expect_connector(const ColoredConnector& x,
                                                       const RingContext& ctx) {
    const int n = x.n();
    if (n < 1) throw UserError("InvalidArgument", "conditional expectation needs n >= 1");
    const int m = n - 1;
    auto to_new = [&](int v) { return v < n ? v : v - 2; };
    auto to_old = [&](int v) { return v <= m ? v : v + 2; };
    Connector rc;
    rc.n = m;
    rc.partner.assign(2 * m + 1, 0);
    ColoredConnector result(rc);
    std::vector<char> seen(2 * n + 1, 0);
    for (int s = 1; s <= 2 * m; ++s) {
        if (result.conn.partner[s]) continue;
        int u = to_old(s);
        int color = 0;
        for (;;) {
            seen[u] = 1;
            int v = x.conn.partner[u];
            seen[v] = 1;
            color += x.color_from(u);
            if (v == n || v == n + 1) {
                u = v == n ? n + 1 : n;
                continue;
            }
            int e = to_new(v);
            result.conn.partner[s] = e;
            result.conn.partner[e] = s;
            result.color[s] = color;
            break;
        }
    }
    RingElem scalar = RingElem::delta(-1);
    if (!seen[n]) {
        int u = n, color = 0;
        do {
            int v = x.conn.partner[u];
            color += x.color_from(u);
            u = v == n ? n + 1 : n;
        } while (u != n);
        scalar *= loop_value(color, ctx);
    }
    return {result, scalar};
}

}  // namespace

BrauerElem brauer_expect(const BrauerElem& x, const RingContext& ctx) {
    if (x.n() < 1) throw UserError("InvalidArgument", "conditional expectation needs n >= 1");
    BrauerElem r(x.n() - 1);
    for (const auto& [d, c] : x.terms()) {
        auto [e, s] = expect_connector(d, ctx);
        r.add(e, c * s);
    }
    return r;
}

ColoredConnector include_connector(const ColoredConnector& d) {
    const int n = d.n();
    Connector c;
    c.n = n + 1;
    c.partner.assign(2 * n + 3, 0);
    auto map = [&](int v) { return v <= n ? v : v + 2; };
    for (int v = 1; v <= 2 * n; ++v) c.partner[map(v)] = map(d.conn.partner[v]);
    c.partner[n + 1] = n + 2;
    c.partner[n + 2] = n + 1;
    ColoredConnector r(c);
    for (int v = 1; v <= 2 * n; ++v) r.color[map(v)] = d.color[v];
    return r;
}

BrauerElem brauer_include(const BrauerElem& x) {
    BrauerElem r(x.n() + 1);
    for (const auto& [d, c] : x.terms()) r.add(include_connector(d), c);
    return r;
}

RingElem brauer_trace(const BrauerElem& x, const RingContext& ctx) {
    BrauerElem cur = x;
    while (cur.n() > 0) cur = brauer_expect(cur, ctx);
    RingElem total;
    for (const auto& [d, c] : cur.terms()) total += c;
    return total;
}

ColoredConnector brauer_reflect(const ColoredConnector& d) {
    const int n = d.n();
    Connector c;
    c.n = n;
    c.partner.assign(2 * n + 1, 0);
    for (int v = 1; v <= 2 * n; ++v) c.partner[2 * n + 1 - v] = 2 * n + 1 - d.conn.partner[v];
    ColoredConnector r(c);
    for (int v = 1; v <= 2 * n; ++v) {
        int p = d.conn.partner[v];
        if (v < p) r.color[2 * n + 1 - p] = -d.color[v];
    }
    return r;
}

std::vector<Connector> enumerate_connectors(int n) {
    std::vector<Connector> out;
    std::vector<int> partner(2 * n + 1, 0);
    std::function<void()> rec = [&] {
        int first = 0;
        for (int v = 1; v <= 2 * n; ++v) {
            if (!partner[v]) {
                first = v;
                break;
            }
        }
        if (!first) {
            Connector c;
            c.n = n;
            c.partner = partner;
            out.push_back(c);
            return;
        }
        for (int w = first + 1; w <= 2 * n; ++w) {
            if (partner[w]) continue;
            partner[first] = w;
            partner[w] = first;
            rec();
            partner[first] = partner[w] = 0;
        }
    };
    rec();
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ColoredConnector> enumerate_colored(int n, int cutoff) {
    std::vector<ColoredConnector> out;
    for (const auto& c : enumerate_connectors(n)) {
        std::vector<int> initials;
        for (int v = 1; v <= 2 * n; ++v)
            if (c.partner[v] > v) initials.push_back(v);
        ColoredConnector cc(c);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == initials.size()) {
                out.push_back(cc);
                return;
            }
            for (int col = -cutoff; col <= cutoff; ++col) {
                cc.color[initials[i]] = col;
                rec(i + 1);
            }
            cc.color[initials[i]] = 0;
        };
        rec(0);
    }
    return out;
}

RingElem ring_determinant(const std::vector<std::vector<RingElem>>& m) {
    const int k = static_cast<int>(m.size());
    if (k == 0) return RingElem::one();
    if (k > 20) throw UserError("TooLarge", "symbolic determinant limited to 20x20");
    std::vector<RingElem> dp(std::size_t(1) << k);
    dp[0] = RingElem::one();
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        int row = __builtin_popcountll(mask) - 1;
        RingElem acc;
        for (int col = 0; col < k; ++col) {
            if (!(mask >> col & 1)) continue;
            const RingElem& prev = dp[mask & ~(std::size_t(1) << col)];
            if (prev.is_zero() || m[row][col].is_zero()) continue;
            int above = __builtin_popcountll(mask >> (col + 1));
            RingElem t = m[row][col] * prev;
            if (above & 1) {
                acc -= t;
            } else {
                acc += t;
            }
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

GramResult gram_matrix(const std::vector<ColoredConnector>& S, const RingContext& ctx) {
    std::set<ColoredConnector> members(S.begin(), S.end());
    for (const auto& d : S) {
        if (!members.count(brauer_reflect(d)))
            throw UserError("NotReflectionClosed", "set is not closed under reflection: " + d.to_string());
    }
    GramResult g;
    const std::size_t k = S.size();
    g.matrix.assign(k, std::vector<RingElem>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            BrauerElem prod = brauer_mul(BrauerElem::basis(S[i]), BrauerElem::basis(S[j]), ctx);
            g.matrix[i][j] = brauer_trace(prod, ctx);
        }
    }
    g.det = ring_determinant(g.matrix);
    return g;
}

int rational_rank(std::vector<std::vector<mpq_class>> m) {
    int rank = 0;
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace tsk
