#include "torus_skein/expression.hpp"

#include <cctype>

namespace tsk {

namespace {

class ExprParser {
public:
    ExprParser(std::string_view s, int n, const RingContext& ctx) : s_(s), n_(n), ctx_(ctx) {}

    Expr parse_all() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    int integer(bool allow_sign) {
        skip();
        const std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (digits == pos_) throw ParseError(start, "expected integer");
        if (pos_ - digits > 9) throw ParseError(start, "integer too large");
        const int v = std::stoi(std::string(s_.substr(digits, pos_ - digits)));
        return neg ? -v : v;
    }
    bool factor_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'g' || c == 'e' || c == 'x' || c == '(' ||
               c == 'l' || c == 'z' || c == 'd' || c == 'q';
    }

    Expr expr() {
        skip();
        Expr sum;
        sum.kind = Expr::Sum;
        sum.offset = pos_;
        int sign = 1;
        if (at('-') || at('+')) sign = s_[pos_++] == '-' ? -1 : 1;
        sum.children.push_back(term());
        sum.signs.push_back(sign);
        while (at('+') || at('-')) {
            sign = s_[pos_++] == '-' ? -1 : 1;
            sum.children.push_back(term());
            sum.signs.push_back(sign);
        }
        if (sum.children.size() == 1 && sum.signs[0] == 1) return std::move(sum.children[0]);
        return sum;
    }

    Expr term() {
        skip();
        Expr prod;
        prod.kind = Expr::Product;
        prod.offset = pos_;
        prod.children.push_back(factor());
        for (;;) {
            if (at('*')) {
                ++pos_;
                prod.children.push_back(factor());
            } else if (factor_start()) {
                prod.children.push_back(factor());
            } else {
                break;
            }
        }
        if (prod.children.size() == 1) return std::move(prod.children[0]);
        return prod;
    }

    void check_gen(int i, std::size_t at_offset, const char* name) {
        if (i < 1 || i >= n_)
            throw UserError("IndexOutOfRange", std::string(name) + std::to_string(i) + " at byte " +
                                                   std::to_string(at_offset) + " needs 1 <= i <= n-1 with n=" +
                                                   std::to_string(n_));
    }

    Expr factor() {
        skip();
        const std::size_t start = pos_;
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        const char c = s_[pos_];
        Expr e;
        e.offset = start;
        if (c == 'g' || c == 'e') {
            ++pos_;
            e.kind = c == 'g' ? Expr::G : Expr::E;
            e.index = integer(false);
            check_gen(e.index, start, c == 'g' ? "g" : "e");
        } else if (c == 'x') {
            ++pos_;
            e.kind = Expr::X;
            e.index = integer(false);
            if (e.index < 1 || e.index > n_)
                throw UserError("IndexOutOfRange", "x" + std::to_string(e.index) + " at byte " +
                                                       std::to_string(start) + " needs 1 <= r <= n");
        } else if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (!at(')')) throw ParseError(pos_, "expected ')'");
            ++pos_;
            e = std::move(inner);
            e.offset = start;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'l' || c == 'z' || c == 'd' || c == 'q') {
            e.kind = Expr::Scalar;
            e.scalar = ring_atom();
        } else {
            throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
        if (at('^')) {
            const std::size_t caret = pos_++;
            const int p = integer(true);
            return apply_power(std::move(e), p, caret);
        }
        return e;
    }

    RingElem ring_atom() {
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RingElem(mpz_class(std::string(s_.substr(start, pos_ - start))));
        }
        ++pos_;
        switch (c) {
            case 'l': return RingElem::lambda(1);
            case 'z': return RingElem::z(1);
            case 'd': return RingElem::delta(1);
            default: return ctx_.q(integer(false));
        }
    }

    Expr apply_power(Expr e, int p, std::size_t caret) {
        switch (e.kind) {
            case Expr::G:
            case Expr::X:
                e.power *= p;
                return e;
            case Expr::E:
                if (p < 1) throw UserError("NegativeEPower", "e" + std::to_string(e.index) + "^" + std::to_string(p) +
                                                                 " at byte " + std::to_string(caret) +
                                                                 ": e_i is not invertible");
                e.power = p;
                return e;
            case Expr::Scalar:
                try {
                    e.scalar = e.scalar.pow(p);
                } catch (const UserError&) {
                    throw ParseError(caret, "negative power of a non-unit scalar");
                }
                return e;
            default: {
                if (p < 0) e = invert(std::move(e), caret);
                Expr pw;
                pw.kind = Expr::Power;
                pw.offset = e.offset;
                pw.power = std::abs(p);
                pw.children.push_back(std::move(e));
                return pw;
            }
        }
    }

    Expr invert(Expr e, std::size_t caret) {
        switch (e.kind) {
            case Expr::G:
            case Expr::X:
                e.power = -e.power;
                return e;
            case Expr::Scalar:
                try {
                    e.scalar = e.scalar.pow(-1);
                } catch (const UserError&) {
                    throw ParseError(caret, "negative power of a non-invertible expression");
                }
                return e;
            case Expr::Product: {
                std::vector<Expr> rev;
                for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) rev.push_back(invert(*it, caret));
                e.children = std::move(rev);
                return e;
            }
            case Expr::Power:
                e.children[0] = invert(std::move(e.children[0]), caret);
                return e;
            default:
                throw UserError("NonInvertible", "negative power at byte " + std::to_string(caret) +
                                                     " of an expression that is not a product of invertible factors");
        }
    }

    std::string_view s_;
    int n_;
    const RingContext& ctx_;
    std::size_t pos_ = 0;
};

AlgebraElement letter_power(int n, Gen::Kind pos, Gen::Kind neg, int index, int power, const RingContext& ctx) {
    GenWord w;
    for (int k = 0; k < std::abs(power); ++k) w.push_back({power > 0 ? pos : neg, index});
    return gen_product(n, w, ctx);
}

}  // namespace

Expr parse_expression(std::string_view text, int n, const RingContext& ctx) {
    if (n < 0) throw UserError("IndexOutOfRange", "n must be >= 0");
    return ExprParser(text, n, ctx).parse_all();
}

AlgebraElement evaluate_expression(const Expr& e, int n, const RingContext& ctx) {
    switch (e.kind) {
        case Expr::Scalar: return AlgebraElement::scalar(n, e.scalar);
        case Expr::G: return letter_power(n, Gen::G, Gen::Ginv, e.index, e.power, ctx);
        case Expr::E: return letter_power(n, Gen::E, Gen::E, e.index, e.power, ctx);
        case Expr::X:
            if (e.index == 1) return letter_power(n, Gen::X, Gen::Xinv, 1, e.power, ctx);
            return elem_x(n, e.index, e.power, ctx);
        case Expr::Sum: {
            AlgebraElement out(n);
            for (std::size_t k = 0; k < e.children.size(); ++k)
                out.add_scaled(evaluate_expression(e.children[k], n, ctx), RingElem(e.signs[k]));
            return out;
        }
        case Expr::Product: {
            AlgebraElement out = evaluate_expression(e.children.front(), n, ctx);
            for (std::size_t k = 1; k < e.children.size(); ++k) {
                const Expr& c = e.children[k];
                if (c.kind == Expr::Scalar) {
                    out = out.scaled(c.scalar);
                } else {
                    out = mul(out, evaluate_expression(c, n, ctx), ctx);
                }
            }
            return out;
        }
        case Expr::Power: {
            AlgebraElement base = evaluate_expression(e.children.front(), n, ctx);
            AlgebraElement out = AlgebraElement::identity(n);
            for (int k = 0; k < e.power; ++k) out = mul(out, base, ctx);
            return out;
        }
    }
    throw InternalError("unknown expression node");
}

AlgebraElement eval_expression(std::string_view text, int n, const RingContext& ctx) {
    return evaluate_expression(parse_expression(text, n, ctx), n, ctx);
}

}  // namespace tsk
