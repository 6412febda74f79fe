#include "expr.hpp"

#include <cctype>
#include <sstream>

namespace drw {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (i_ < s_.size()) error(std::string("unexpected '") + s_[i_] + "'");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Parse, "line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + msg);
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
    }
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    bool peek(const std::string& lit) {
        skip();
        return s_.compare(i_, lit.size(), lit) == 0;
    }
    bool accept(const std::string& lit) {
        if (!peek(lit)) return false;
        for (size_t k = 0; k < lit.size(); ++k) advance();
        return true;
    }
    void expect(const std::string& lit) {
        if (!accept(lit)) error("expected '" + lit + "'");
    }

    int64_t integer() {
        skip();
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            neg = s_[i_] == '-';
            advance();
        }
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) error("expected an integer");
        int64_t v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            if (v > (INT64_MAX - 9) / 10) error("integer literal too large");
            v = v * 10 + (s_[i_] - '0');
            advance();
        }
        return neg ? -v : v;
    }

    std::shared_ptr<Expr> node(Expr::Kind k) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->line = line_;
        e->col = col_;
        return e;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip();
            auto op = node(Expr::Kind::Add);
            if (accept("+")) {
            } else if (accept("-")) {
                op->kind = Expr::Kind::Sub;
            } else {
                return lhs;
            }
            op->kids = {lhs, term()};
            lhs = op;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            skip();
            auto op = node(Expr::Kind::Mul);
            if (!accept("*")) return lhs;
            op->kids = {lhs, factor()};
            lhs = op;
        }
    }

    ExprPtr unary(Expr::Kind k, const std::string& open) {
        auto e = node(k);
        expect(open);
        e->kids = {expr()};
        expect(")");
        return e;
    }

    ExprPtr power_op(Expr::Kind k, const std::string& head) {
        auto e = node(k);
        expect(head);
        e->value = integer();
        if (e->value < 0) error("negative exponent");
        expect("(");
        e->kids = {expr()};
        expect(")");
        return e;
    }

    ExprPtr factor() {
        skip();
        if (i_ >= s_.size()) error("unexpected end of input");
        if (peek("dlogt")) {
            auto e = node(Expr::Kind::Dlog);
            expect("dlogt");
            return e;
        }
        if (peek("dV^")) return power_op(Expr::Kind::DV, "dV^");
        if (peek("V^")) return power_op(Expr::Kind::V, "V^");
        if (peek("d(")) return unary(Expr::Kind::D, "d(");
        if (peek("F(")) return unary(Expr::Kind::F, "F(");
        if (peek("R(")) return unary(Expr::Kind::R, "R(");
        if (peek("p_(")) return unary(Expr::Kind::PLine, "p_(");
        if (peek("T(")) {
            auto e = node(Expr::Kind::Teich);
            expect("T(");
            e->value = integer();
            expect(",");
            e->expo = integer();
            expect(")");
            return e;
        }
        if (accept("(")) {
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            auto e = node(Expr::Kind::Int);
            e->value = integer();
            return e;
        }
        error(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

[[noreturn]] void degree_error(const Expr& e, const std::string& msg) {
    fail(ErrorKind::Degree, "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ": " + msg);
}

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul: return 2;
        default: return 3;
    }
}

void print(std::ostream& os, const Expr& e) {
    auto child = [&](const Expr& k, int need) {
        if (precedence(k) < need) {
            os << "(";
            print(os, k);
            os << ")";
        } else {
            print(os, k);
        }
    };
    switch (e.kind) {
        case Expr::Kind::Int: os << e.value; break;
        case Expr::Kind::Teich: os << "T(" << e.value << "," << e.expo << ")"; break;
        case Expr::Kind::Dlog: os << "dlogt"; break;
        case Expr::Kind::V: os << "V^" << e.value << "("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::DV: os << "dV^" << e.value << "("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::F: os << "F("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::R: os << "R("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::PLine: os << "p_("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::D: os << "d("; print(os, *e.kids[0]); os << ")"; break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            child(*e.kids[0], 1);
            os << (e.kind == Expr::Kind::Add ? " + " : " - ");
            child(*e.kids[1], 2);
            break;
        case Expr::Kind::Mul:
            child(*e.kids[0], 2);
            os << "*";
            child(*e.kids[1], 3);
            break;
    }
}

}  // namespace

int expr_degree(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Int:
        case K::Teich: return 0;
        case K::Dlog: return 1;
        case K::V:
        case K::F:
        case K::R:
        case K::PLine: return expr_degree(*e.kids[0]);
        case K::D:
        case K::DV:
            if (expr_degree(*e.kids[0]) != 0) degree_error(e, "d of a 1-form has degree 2");
            return 1;
        case K::Add:
        case K::Sub: {
            const int a = expr_degree(*e.kids[0]), b = expr_degree(*e.kids[1]);
            if (a != b) degree_error(e, "cannot add a " + std::to_string(a) + "-form and a " + std::to_string(b) + "-form");
            return a;
        }
        case K::Mul: {
            const int s = expr_degree(*e.kids[0]) + expr_degree(*e.kids[1]);
            if (s > 1) degree_error(e, "product of two 1-forms has degree 2");
            return s;
        }
    }
    return 0;
}

ExprPtr parse_expr(const std::string& src) {
    ExprPtr e = Parser(src).parse();
    expr_degree(*e);
    return e;
}

std::string print_expr(const Expr& e) {
    std::ostringstream os;
    print(os, e);
    return os.str();
}

bool same_tree(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.value != b.value || a.expo != b.expo || a.kids.size() != b.kids.size()) return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!same_tree(*a.kids[i], *b.kids[i])) return false;
    return true;
}

namespace {

Form eval_at(const Expr& e, int p, int level) {
    using K = Expr::Kind;
    const int q = expr_degree(e);
    if (level <= 0) return Form(p, 0, q);
    switch (e.kind) {
        case K::Int: return single(p, level, 0, {0, 0}, mod(e.value, ipow(p, level)));
        case K::Teich:
            if (mod(e.value, p) == 0) return Form(p, level, 0);
            return nf_teich(p, level, mod(e.value, p), e.expo);
        case K::Dlog: return dlog_monomial(p, level, 1, 1);
        case K::V: {
            const int s = static_cast<int>(e.value);
            if (s >= level) return Form(p, level, q);
            return nf_Vs(eval_at(*e.kids[0], p, level - s), s);
        }
        case K::DV: {
            const int s = static_cast<int>(e.value);
            if (s >= level) return Form(p, level, 1);
            return nf_d(nf_Vs(eval_at(*e.kids[0], p, level - s), s));
        }
        case K::F: return nf_F(eval_at(*e.kids[0], p, level + 1));
        case K::R: return nf_R(eval_at(*e.kids[0], p, level + 1));
        case K::PLine:
            if (level == 1) return Form(p, 1, q);
            return nf_pline(eval_at(*e.kids[0], p, level - 1));
        case K::D: return nf_d(eval_at(*e.kids[0], p, level));
        case K::Add: return nf_add(eval_at(*e.kids[0], p, level), eval_at(*e.kids[1], p, level));
        case K::Sub: return nf_sub(eval_at(*e.kids[0], p, level), eval_at(*e.kids[1], p, level));
        case K::Mul: return nf_mul(eval_at(*e.kids[0], p, level), eval_at(*e.kids[1], p, level));
    }
    return Form(p, level, q);
}

}  // namespace

Form eval_expr(const Expr& e, const PrimeContext& ctx) { return eval_at(e, ctx.p, ctx.n); }

Form parse_form(const std::string& src, const PrimeContext& ctx) { return eval_expr(*parse_expr(src), ctx); }

}  // namespace drw
