#include "torus_skein/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace tsk {

Monomial monomial_product(const Monomial& x, const Monomial& y) {
    Monomial r;
    r.a = x.a + y.a;
    r.b = x.b + y.b;
    r.c = x.c + y.c;
    r.q.reserve(x.q.size() + y.q.size());
    auto i = x.q.begin();
    auto j = y.q.begin();
    while (i != x.q.end() || j != y.q.end()) {
        if (j == y.q.end() || (i != x.q.end() && i->first < j->first)) {
            r.q.push_back(*i++);
        } else if (i == x.q.end() || j->first < i->first) {
            r.q.push_back(*j++);
        } else {
            r.q.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return r;
}

namespace {

/** Normal form of z^b delta^c in the lambda/z/delta subring, memoized. */
class ZDReducer {
public:
    const RingElem::Terms& get(int b, int c) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key(b, c));
            if (it != memo_.end()) return it->second;
        }
        RingElem::Terms value = compute(b, c);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(key(b, c), std::move(value)).first->second;
    }

private:
    static std::int64_t key(int b, int c) {
        return (static_cast<std::int64_t>(b) << 32) ^ static_cast<std::uint32_t>(c);
    }

    static void add_shifted(RingElem::Terms& out, const RingElem::Terms& src, int da,
                            const mpz_class& mult) {
        for (const auto& [m, coef] : src) {
            Monomial mm = m;
            mm.a += da;
            mpz_class v = coef * mult;
            auto it = out.find(mm);
            if (it == out.end()) {
                out.emplace(std::move(mm), std::move(v));
            } else {
                it->second += v;
                if (it->second == 0) out.erase(it);
            }
        }
    }

    RingElem::Terms compute(int b, int c) {
        RingElem::Terms out;
        if (b == 0 || c == 0) {
            Monomial m;
            m.b = b;
            m.c = c;
            out.emplace(m, mpz_class(1));
            return out;
        }
        if (c > 0) {
            // z^b d^c = z^b d^{c-1} + l^{-1} z^{b-1} d^{c-1} - l z^{b-1} d^{c-1}
            add_shifted(out, get(b, c - 1), 0, 1);
            const auto& low = get(b - 1, c - 1);
            add_shifted(out, low, -1, 1);
            add_shifted(out, low, 1, -1);
        } else {
            // z^b d^c = z^b d^{c+1} - l^{-1} z^{b-1} d^c + l z^{b-1} d^c
            add_shifted(out, get(b, c + 1), 0, 1);
            const auto& low = get(b - 1, c);
            add_shifted(out, low, -1, -1);
            add_shifted(out, low, 1, 1);
        }
        return out;
    }

    std::mutex mu_;
    std::unordered_map<std::int64_t, RingElem::Terms> memo_;
};

ZDReducer& zd_reducer() {
    static ZDReducer r;
    return r;
}

}  // namespace

RingElem::RingElem(long v) {
    if (v != 0) terms_.emplace(Monomial{}, mpz_class(v));
}

RingElem::RingElem(const mpz_class& v) {
    if (v != 0) terms_.emplace(Monomial{}, v);
}

RingElem RingElem::lambda(int power) {
    Monomial m;
    m.a = power;
    return from_monomial(m);
}

RingElem RingElem::z(int power) {
    Monomial m;
    m.b = power;
    return from_monomial(m);
}

RingElem RingElem::delta(int power) {
    Monomial m;
    m.c = power;
    return from_monomial(m);
}

RingElem RingElem::from_monomial(const Monomial& m, const mpz_class& coef) {
    RingElem r;
    r.add_monomial(m, coef);
    return r;
}

bool RingElem::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

int RingElem::max_q_index() const {
    int r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.max_q_index());
    return r;
}

bool RingElem::as_integer(mpz_class& out) const {
    if (terms_.empty()) {
        out = 0;
        return true;
    }
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) {
        out = terms_.begin()->second;
        return true;
    }
    return false;
}

void RingElem::add_normal(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void RingElem::add_monomial(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    if (m.is_normal()) {
        add_normal(m, c);
        return;
    }
    const auto& red = zd_reducer().get(m.b, m.c);
    for (const auto& [rm, rc] : red) {
        Monomial mm = rm;
        mm.a += m.a;
        mm.q = m.q;
        add_normal(mm, rc * c);
    }
}

RingElem RingElem::operator-() const {
    RingElem r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
    for (const auto& [m, c] : o.terms_) add_normal(m, c);
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
    for (const auto& [m, c] : o.terms_) add_normal(m, -c);
    return *this;
}

RingElem operator*(const RingElem& x, const RingElem& y) {
    RingElem r;
    if (x.is_zero() || y.is_zero()) return r;
    for (const auto& [mx, cx] : x.terms_) {
        for (const auto& [my, cy] : y.terms_) {
            r.add_monomial(monomial_product(mx, my), cx * cy);
        }
    }
    return r;
}

RingElem& RingElem::operator*=(const RingElem& o) {
    *this = *this * o;
    return *this;
}

RingElem RingElem::pow(int e) const {
    if (e < 0) {
        if (terms_.size() != 1) throw UserError("DivisionByZero", "inverse of a non-unit ring element");
        const auto& [m, c] = *terms_.begin();
        if ((c != 1 && c != -1) || m.b != 0 || !m.q.empty())
            throw UserError("DivisionByZero", "inverse of a non-unit ring element");
        Monomial inv;
        inv.a = -m.a;
        inv.c = -m.c;
        return RingElem::from_monomial(inv, c).pow(-e);
    }
    RingElem result = RingElem::one();
    RingElem base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

int RingElem::delta_degree() const {
    int d = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first || m.c > d) d = m.c;
        first = false;
    }
    return d;
}

namespace {

void append_var(std::string& out, const char* name, int e, bool& any) {
    if (e == 0) return;
    if (any) out += '*';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
    any = true;
}

}  // namespace

std::string RingElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class absc = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        bool any = false;
        append_var(mono, "l", m.a, any);
        append_var(mono, "z", m.b, any);
        append_var(mono, "d", m.c, any);
        for (const auto& [r, e] : m.q) {
            std::string qn = "q" + std::to_string(r);
            append_var(mono, qn.c_str(), e, any);
        }
        if (!any) {
            out += absc.get_str();
        } else if (absc == 1) {
            out += mono;
        } else {
            out += absc.get_str() + "*" + mono;
        }
    }
    return out;
}

RingElem ring_normalize(const FormalPoly& p) {
    RingElem r;
    for (const auto& [m, c] : p) r.add_monomial(m, c);
    return r;
}

RingElem substitute(const RingElem& x, const RingSubstitution& s) {
    RingElem out;
    std::map<std::pair<int, int>, RingElem> qpow;
    for (const auto& [m, c] : x.terms()) {
        RingElem t(c);
        t *= (m.a >= 0 ? s.lambda.pow(m.a) : s.lambda_inv.pow(-m.a));
        t *= s.z.pow(m.b);
        t *= (m.c >= 0 ? s.delta.pow(m.c) : s.delta_inv.pow(-m.c));
        for (const auto& [r, e] : m.q) {
            auto key = std::make_pair(r, e);
            auto it = qpow.find(key);
            if (it == qpow.end()) {
                auto qi = s.q.find(r);
                RingElem base;
                if (qi == s.q.end()) {
                    Monomial qm;
                    qm.q.emplace_back(r, 1);
                    base = RingElem::from_monomial(qm);
                } else {
                    base = qi->second;
                }
                it = qpow.emplace(key, base.pow(e)).first;
            }
            t *= it->second;
        }
        out += t;
    }
    return out;
}

RingElem e_specialize(const RingElem& x) {
    RingElem out;
    for (const auto& [m, c] : x.terms()) {
        if (m.b != 0) continue;
        Monomial mm = m;
        mm.a = 0;
        out.add_monomial(mm, c);
    }
    return out;
}

namespace {

mpq_class qpow(const mpq_class& base, int e) {
    if (e < 0) {
        if (base == 0) throw UserError("DivisionByZero", "negative power of zero");
        mpq_class inv = 1 / base;
        return qpow(inv, -e);
    }
    mpq_class r = 1;
    mpq_class b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

}  // namespace

void check_point(const NumericPoint& p) {
    if (p.lambda == 0) throw UserError("DivisionByZero", "lambda must be nonzero");
    if (p.z == 0) {
        if (p.lambda * p.lambda != 1)
            throw UserError("InvalidAssignment", "z = 0 forces lambda = +-1");
        return;
    }
    mpq_class expected = (1 / p.lambda - p.lambda) / p.z + 1;
    if (expected != p.delta)
        throw UserError("InvalidAssignment", "delta must equal (lambda^-1 - lambda)/z + 1");
}

mpq_class evaluate(const RingElem& x, const NumericPoint& p) {
    mpq_class total = 0;
    for (const auto& [m, c] : x.terms()) {
        mpq_class t(c);
        t *= qpow(p.lambda, m.a);
        t *= qpow(p.z, m.b);
        t *= qpow(p.delta, m.c);
        for (const auto& [r, e] : m.q) {
            auto it = p.q.find(r);
            if (it == p.q.end())
                throw UserError("InvalidAssignment", "no value for q" + std::to_string(r));
            t *= qpow(it->second, e);
        }
        total += t;
    }
    return total;
}

mpq_class random_nonzero_rational(std::mt19937_64& rng, int max_abs) {
    std::uniform_int_distribution<int> num(1, max_abs);
    std::uniform_int_distribution<int> den(1, max_abs);
    std::uniform_int_distribution<int> sgn(0, 1);
    mpq_class v(num(rng) * (sgn(rng) ? 1 : -1), den(rng));
    v.canonicalize();
    return v;
}

RingContext::RingContext(int q_index_bound) : bound_(q_index_bound) {
    if (q_index_bound < 1) throw UserError("InvalidArgument", "q index bound must be positive");
}

void RingContext::check_index(int r) const {
    if (r < 1) throw UserError("InvalidArgument", "q index must be positive");
    if (r > bound_)
        throw GuardError("QIndexOverflow", "q" + std::to_string(r) + " exceeds bound " +
                                               std::to_string(bound_));
}

void RingContext::check(const RingElem& x) const {
    int m = x.max_q_index();
    if (m > bound_) check_index(m);
}

RingElem RingContext::q(int r) const {
    check_index(r);
    Monomial m;
    m.q.emplace_back(r, 1);
    return RingElem::from_monomial(m);
}

RingElem RingContext::fpoly(int r) const {
    check_index(r);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = fpoly_memo_.find(r);
        if (it != fpoly_memo_.end()) return it->second;
    }
    RingElem v = theta_negative<RingElem>(
        r, [this](int s) { return q(s); }, RingElem::delta(1),
        [](const RingElem& a, const RingElem& b) { return a * b; },
        [](const RingElem& a, const RingElem& b, int sign) { return sign > 0 ? a + b : a - b; },
        [](const RingElem& c, const RingElem& t) { return c * t; });
    std::lock_guard<std::mutex> lock(mu_);
    return fpoly_memo_.emplace(r, std::move(v)).first->second;
}

NumericPoint RingContext::random_generic_point(std::mt19937_64& rng, int max_q) const {
    NumericPoint p;
    for (;;) {
        p.lambda = random_nonzero_rational(rng);
        p.z = random_nonzero_rational(rng);
        p.delta = (1 / p.lambda - p.lambda) / p.z + 1;
        if (p.delta != 0) break;
    }
    for (int r = 1; r <= max_q; ++r) p.q[r] = random_nonzero_rational(rng);
    return p;
}

NumericPoint RingContext::random_e_point(std::mt19937_64& rng, int max_q) const {
    NumericPoint p;
    p.lambda = 1;
    p.z = 0;
    p.delta = random_nonzero_rational(rng);
    for (int r = 1; r <= max_q; ++r) p.q[r] = random_nonzero_rational(rng);
    return p;
}

namespace {

class LiteralParser {
public:
    LiteralParser(std::string_view s, const RingContext& ctx) : s_(s), ctx_(ctx) {}

    RingElem parse_all() {
        RingElem r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, "unexpected character");
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    int integer(bool allow_sign) {
        skip();
        std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (digits == pos_) throw ParseError(start, "expected integer");
        if (pos_ - digits > 9) throw ParseError(start, "integer too large");
        int v = std::stoi(std::string(s_.substr(digits, pos_ - digits)));
        return neg ? -v : v;
    }
    int exponent() {
        if (peek('^')) {
            ++pos_;
            return integer(true);
        }
        return 1;
    }
    RingElem expr() {
        RingElem r;
        int sign = 1;
        if (peek('-')) {
            ++pos_;
            sign = -1;
        } else if (peek('+')) {
            ++pos_;
        }
        RingElem t = term();
        r = sign > 0 ? t : -t;
        for (;;) {
            if (peek('+')) {
                ++pos_;
                r += term();
            } else if (peek('-')) {
                ++pos_;
                r -= term();
            } else {
                break;
            }
        }
        return r;
    }
    bool factor_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'l' || c == 'z' || c == 'd' ||
               c == 'q' || c == '(';
    }
    RingElem term() {
        RingElem r = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                r *= factor();
            } else if (factor_start()) {
                r *= factor();
            } else {
                break;
            }
        }
        return r;
    }
    RingElem factor() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        std::size_t at = pos_;
        RingElem base;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            base = RingElem(mpz_class(std::string(s_.substr(start, pos_ - start))));
        } else if (c == 'l') {
            ++pos_;
            base = RingElem::lambda(1);
        } else if (c == 'z') {
            ++pos_;
            base = RingElem::z(1);
        } else if (c == 'd') {
            ++pos_;
            base = RingElem::delta(1);
        } else if (c == 'q') {
            ++pos_;
            int r = integer(false);
            base = ctx_.q(r);
        } else if (c == '(') {
            ++pos_;
            base = expr();
            if (!peek(')')) throw ParseError(pos_, "expected ')'");
            ++pos_;
        } else {
            throw ParseError(at, std::string("unexpected character '") + c + "'");
        }
        int e = exponent();
        if (e < 0) {
            try {
                return base.pow(e);
            } catch (const UserError&) {
                throw ParseError(at, "negative power of a non-unit");
            }
        }
        return base.pow(e);
    }

    std::string_view s_;
    const RingContext& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElem RingContext::parse(std::string_view text) const {
    return LiteralParser(text, *this).parse_all();
}

bool ring_eq(const RingElem& x, const RingElem& y) { return x == y; }

bool ring_eq_checked(const RingElem& x, const RingElem& y, const RingContext& ctx,
                     std::mt19937_64& rng, int cross_checks) {
    bool structural = x == y;
    if (cross_checks <= 0) return structural;
    RingElem diff = x - y;
    int maxq = std::max({diff.max_q_index(), x.max_q_index(), y.max_q_index(), 1});
    bool all_zero = true;
    for (int i = 0; i < cross_checks; ++i) {
        NumericPoint p = (i % 4 == 3) ? ctx.random_e_point(rng, maxq)
                                      : ctx.random_generic_point(rng, maxq);
        if (evaluate(diff, p) != 0) {
            all_zero = false;
            if (structural) throw InternalError("equal normal forms evaluate differently");
        }
    }
    if (!structural && all_zero)
        throw InternalError("distinct normal forms agree at every sampled point: " + x.to_string() +
                            " vs " + y.to_string());
    return structural;
}

}  // namespace tsk
