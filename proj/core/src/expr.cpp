#include "gencvx/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kE = 2.718281828459045;

// ---------------------------------------------------------------- lexer ----

enum class Tok {
    Number, Ident, Plus, Minus, Star, Slash, Caret,
    LParen, RParen, Comma, Arrow, Lt, Le, Eq, Gt, Ge, End
};

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t at = pos_;
        if (pos_ >= src_.size()) return {Tok::End, at, ""};

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return lex_ident();

        ++pos_;
        switch (c) {
        case '+': return {Tok::Plus, at, "+"};
        case '-':
            if (pos_ < src_.size() && src_[pos_] == '>') { ++pos_; return {Tok::Arrow, at, "->"}; }
            return {Tok::Minus, at, "-"};
        case '*': return {Tok::Star, at, "*"};
        case '/': return {Tok::Slash, at, "/"};
        case '^': return {Tok::Caret, at, "^"};
        case '(': return {Tok::LParen, at, "("};
        case ')': return {Tok::RParen, at, ")"};
        case ',': return {Tok::Comma, at, ","};
        case '<':
            if (pos_ < src_.size() && src_[pos_] == '=') { ++pos_; return {Tok::Le, at, "<="}; }
            return {Tok::Lt, at, "<"};
        case '>':
            if (pos_ < src_.size() && src_[pos_] == '=') { ++pos_; return {Tok::Ge, at, ">="}; }
            return {Tok::Gt, at, ">"};
        case '=': return {Tok::Eq, at, "="};
        default:
            throw ParseError(at, "unexpected character", std::string(1, c));
        }
    }

private:
    Token lex_number() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        bool seen_dot = false;
        while (end < src_.size()) {
            const char c = src_[end];
            if (std::isdigit(static_cast<unsigned char>(c))) { ++end; continue; }
            if (c == '.' && !seen_dot) { seen_dot = true; ++end; continue; }
            if ((c == 'e' || c == 'E') && end + 1 < src_.size()) {
                std::size_t p = end + 1;
                if (src_[p] == '+' || src_[p] == '-') ++p;
                if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                    end = p + 1;
                    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
                }
            }
            break;
        }
        const std::string text(src_.substr(at, end - at));
        if (text == ".") throw ParseError(at, "malformed number", text);
        pos_ = end;
        Token t{Tok::Number, at, text};
        t.number = std::strtod(text.c_str(), nullptr);
        return t;
    }

    Token lex_ident() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
            ++end;
        const std::string text(src_.substr(at, end - at));
        pos_ = end;
        return {Tok::Ident, at, text};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// --------------------------------------------------------------- parser ----

// Grammar (LL(1), precedence ^ > unary- > */ > +-):
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := number | 'pi' | 'e' | 't' | x<digits> | fn '(' expr ')'
//           | 'piecewise' '(' cond '->' expr (',' cond '->' expr)* ',' 'else' '->' expr ')'
//           | 'integral0' '(' expr ',' expr ')' | '(' expr ')'
//   cond   := expr ('<'|'<='|'='|'>'|'>=') expr
class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    NodePtr parse_all(int* max_var, bool* uses_integral) {
        NodePtr e = parse_expr();
        expect(Tok::End, "unexpected trailing input");
        *max_var = max_var_;
        *uses_integral = uses_integral_;
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Tok kind, const char* msg) {
        if (cur_.kind != kind) throw ParseError(cur_.offset, msg, cur_.text);
        if (kind != Tok::End) advance();
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const BinOp op = cur_.kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
            advance();
            NodePtr rhs = parse_term();
            lhs = make({BinaryNode{op, lhs, rhs}});
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const BinOp op = cur_.kind == Tok::Star ? BinOp::Mul : BinOp::Div;
            advance();
            NodePtr rhs = parse_unary();
            lhs = make({BinaryNode{op, lhs, rhs}});
        }
        return lhs;
    }

    NodePtr parse_unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return make({UnaryNode{UnFn::Neg, parse_unary()}});
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (cur_.kind == Tok::Caret) {
            advance();
            if (cur_.kind != Tok::Number) throw ParseError(cur_.offset, "expected integer exponent", cur_.text);
            const double v = cur_.number;
            const int n = static_cast<int>(v);
            if (static_cast<double>(n) != v || n < 0)
                throw ParseError(cur_.offset, "exponent must be a nonnegative integer", cur_.text);
            advance();
            return make({PowNode{base, n}});
        }
        return base;
    }

    NodePtr parse_atom() {
        switch (cur_.kind) {
        case Tok::Number: {
            const double v = cur_.number;
            advance();
            return make({LiteralNode{v}});
        }
        case Tok::LParen: {
            advance();
            NodePtr e = parse_expr();
            expect(Tok::RParen, "expected ')'");
            return e;
        }
        case Tok::Ident: return parse_ident();
        default:
            throw ParseError(cur_.offset, "expected expression", cur_.text);
        }
    }

    NodePtr parse_ident() {
        const Token tok = cur_;
        const std::string& id = tok.text;
        advance();

        if (id == "pi") return make({ConstNode{NamedConst::Pi}});
        if (id == "e") return make({ConstNode{NamedConst::E}});
        if (id == "t") {
            if (!t_allowed_) throw ParseError(tok.offset, "t is only valid inside an integral0 integrand", id);
            return make({BoundTNode{}});
        }
        if (id.size() >= 2 && id[0] == 'x' && std::isdigit(static_cast<unsigned char>(id[1]))) {
            if (t_allowed_)
                throw ParseError(tok.offset, "integral0 integrands may only use the bound variable t", id);
            int idx = 0;
            for (std::size_t i = 1; i < id.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(id[i])))
                    throw ParseError(tok.offset, "unknown identifier", id);
                idx = idx * 10 + (id[i] - '0');
            }
            if (idx < 1) throw ParseError(tok.offset, "variable indices start at x1", id);
            max_var_ = std::max(max_var_, idx - 1);
            return make({VarNode{idx - 1}});
        }

        static const struct { const char* name; UnFn fn; } kFns[] = {
            {"sin", UnFn::Sin}, {"cos", UnFn::Cos}, {"log", UnFn::Log},
            {"exp", UnFn::Exp}, {"abs", UnFn::Abs}, {"sign", UnFn::Sign},
            {"sqrt", UnFn::Sqrt},
        };
        for (const auto& f : kFns) {
            if (id == f.name) {
                expect(Tok::LParen, "expected '(' after function name");
                NodePtr arg = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return make({UnaryNode{f.fn, arg}});
            }
        }

        if (id == "piecewise") return parse_piecewise(tok.offset);
        if (id == "integral0") return parse_integral0(tok.offset);
        if (id == "else") throw ParseError(tok.offset, "'else' is only valid inside piecewise", id);
        throw ParseError(tok.offset, "unknown identifier", id);
    }

    RelOp parse_relop() {
        switch (cur_.kind) {
        case Tok::Lt: advance(); return RelOp::Lt;
        case Tok::Le: advance(); return RelOp::Le;
        case Tok::Eq: advance(); return RelOp::Eq;
        case Tok::Gt: advance(); return RelOp::Gt;
        case Tok::Ge: advance(); return RelOp::Ge;
        default:
            throw ParseError(cur_.offset, "expected comparison operator", cur_.text);
        }
    }

    NodePtr parse_piecewise(std::size_t at) {
        expect(Tok::LParen, "expected '(' after piecewise");
        PiecewiseNode pw;
        for (;;) {
            if (cur_.kind == Tok::Ident && cur_.text == "else") {
                advance();
                expect(Tok::Arrow, "expected '->' after else");
                pw.otherwise = parse_expr();
                expect(Tok::RParen, "expected ')'");
                if (pw.branches.empty() && !pw.otherwise)
                    throw ParseError(at, "piecewise needs at least an else branch", "piecewise");
                return make({std::move(pw)});
            }
            PiecewiseNode::Branch b;
            b.lhs = parse_expr();
            b.rel = parse_relop();
            b.rhs = parse_expr();
            expect(Tok::Arrow, "expected '->' in piecewise branch");
            b.value = parse_expr();
            pw.branches.push_back(std::move(b));
            if (cur_.kind == Tok::Comma) { advance(); continue; }
            throw ParseError(cur_.offset, "piecewise requires a final else branch", cur_.text);
        }
    }

    NodePtr parse_integral0(std::size_t at) {
        if (inside_integral_) throw ParseError(at, "nested integral0 is not supported", "integral0");
        expect(Tok::LParen, "expected '(' after integral0");
        inside_integral_ = true;
        t_allowed_ = true;
        NodePtr integrand = parse_expr();
        t_allowed_ = false;
        expect(Tok::Comma, "expected ',' between integrand and upper limit");
        NodePtr upper = parse_expr();
        inside_integral_ = false;
        expect(Tok::RParen, "expected ')'");
        uses_integral_ = true;
        return make({Integral0Node{integrand, upper}});
    }

    Lexer lex_;
    Token cur_{Tok::End, 0, ""};
    bool t_allowed_ = false;
    bool inside_integral_ = false;
    int max_var_ = -1;
    bool uses_integral_ = false;
};

// ------------------------------------------------------------ evaluator ----

struct EvalCtx {
    std::span<const double> point;
    double t_value = 0.0;
    bool has_t = false;
    const IntegralResolver* resolver = nullptr;
};

double eval_node(const Node& n, const EvalCtx& ctx);

double eval_pow(double base, int exponent) {
    double r = 1.0;
    double b = base;
    int e = exponent;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool eval_rel(RelOp op, double a, double b) {
    switch (op) {
    case RelOp::Lt: return a < b;
    case RelOp::Le: return a <= b;
    case RelOp::Eq: return a == b;
    case RelOp::Gt: return a > b;
    case RelOp::Ge: return a >= b;
    }
    return false;
}

double eval_node(const Node& n, const EvalCtx& ctx) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LiteralNode>) {
                return node.value;
            } else if constexpr (std::is_same_v<T, ConstNode>) {
                return node.which == NamedConst::Pi ? kPi : kE;
            } else if constexpr (std::is_same_v<T, VarNode>) {
                if (node.index < 0 || static_cast<std::size_t>(node.index) >= ctx.point.size())
                    throw DomainError("variable index out of range for evaluation point");
                return ctx.point[static_cast<std::size_t>(node.index)];
            } else if constexpr (std::is_same_v<T, BoundTNode>) {
                if (!ctx.has_t) throw DomainError("t used outside integral0");
                return ctx.t_value;
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                const double a = eval_node(*node.lhs, ctx);
                const double b = eval_node(*node.rhs, ctx);
                switch (node.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div:
                    if (b == 0.0) throw DomainError("division by zero");
                    return a / b;
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                const double a = eval_node(*node.arg, ctx);
                switch (node.fn) {
                case UnFn::Neg: return -a;
                case UnFn::Sin: return std::sin(a);
                case UnFn::Cos: return std::cos(a);
                case UnFn::Log:
                    if (a <= 0.0) throw DomainError("log of non-positive argument");
                    return std::log(a);
                case UnFn::Exp: return std::exp(a);
                case UnFn::Abs: return std::fabs(a);
                case UnFn::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
                case UnFn::Sqrt:
                    if (a < 0.0) throw DomainError("sqrt of negative argument");
                    return std::sqrt(a);
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, PowNode>) {
                return eval_pow(eval_node(*node.base, ctx), node.exponent);
            } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
                for (const auto& b : node.branches) {
                    if (eval_rel(b.rel, eval_node(*b.lhs, ctx), eval_node(*b.rhs, ctx)))
                        return eval_node(*b.value, ctx);
                }
                return eval_node(*node.otherwise, ctx);
            } else if constexpr (std::is_same_v<T, Integral0Node>) {
                if (ctx.resolver == nullptr)
                    throw DomainError("integral0 requires a quadrature service");
                const double upper = eval_node(*node.upper, ctx);
                const Node* integrand = node.integrand.get();
                auto f = [integrand, &ctx](double t) {
                    EvalCtx inner = ctx;
                    inner.t_value = t;
                    inner.has_t = true;
                    return eval_node(*integrand, inner);
                };
                return ctx.resolver->integrate(&n, f, upper);
            }
        },
        n.v);
}

// -------------------------------------------------------------- printer ----

// Precedence: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atoms.
int node_level(const Node& n) {
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BinaryNode>)
                return (node.op == BinOp::Add || node.op == BinOp::Sub) ? 1 : 2;
            else if constexpr (std::is_same_v<T, UnaryNode>)
                return node.fn == UnFn::Neg ? 3 : 5;
            else if constexpr (std::is_same_v<T, PowNode>)
                return 4;
            else
                return 5;
        },
        n.v);
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_level, std::string& out) {
    if (node_level(child) < min_level) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

const char* rel_text(RelOp op) {
    switch (op) {
    case RelOp::Lt: return " < ";
    case RelOp::Le: return " <= ";
    case RelOp::Eq: return " = ";
    case RelOp::Gt: return " > ";
    case RelOp::Ge: return " >= ";
    }
    return " ? ";
}

void print_node(const Node& n, std::string& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LiteralNode>) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", node.value);
                out += buf;
            } else if constexpr (std::is_same_v<T, ConstNode>) {
                out += node.which == NamedConst::Pi ? "pi" : "e";
            } else if constexpr (std::is_same_v<T, VarNode>) {
                out += 'x';
                out += std::to_string(node.index + 1);
            } else if constexpr (std::is_same_v<T, BoundTNode>) {
                out += 't';
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                const bool additive = node.op == BinOp::Add || node.op == BinOp::Sub;
                const int level = additive ? 1 : 2;
                print_child(*node.lhs, level, out);
                switch (node.op) {
                case BinOp::Add: out += " + "; break;
                case BinOp::Sub: out += " - "; break;
                case BinOp::Mul: out += "*"; break;
                case BinOp::Div: out += "/"; break;
                }
                print_child(*node.rhs, level + 1, out);  // left-assoc: parenthesize equal level on the right
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                if (node.fn == UnFn::Neg) {
                    out += '-';
                    print_child(*node.arg, 3, out);
                    return;
                }
                switch (node.fn) {
                case UnFn::Sin: out += "sin("; break;
                case UnFn::Cos: out += "cos("; break;
                case UnFn::Log: out += "log("; break;
                case UnFn::Exp: out += "exp("; break;
                case UnFn::Abs: out += "abs("; break;
                case UnFn::Sign: out += "sign("; break;
                case UnFn::Sqrt: out += "sqrt("; break;
                default: break;
                }
                print_node(*node.arg, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, PowNode>) {
                print_child(*node.base, 5, out);
                out += '^';
                out += std::to_string(node.exponent);
            } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
                out += "piecewise(";
                for (const auto& b : node.branches) {
                    print_node(*b.lhs, out);
                    out += rel_text(b.rel);
                    print_node(*b.rhs, out);
                    out += " -> ";
                    print_node(*b.value, out);
                    out += ", ";
                }
                out += "else -> ";
                print_node(*node.otherwise, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Integral0Node>) {
                out += "integral0(";
                print_node(*node.integrand, out);
                out += ", ";
                print_node(*node.upper, out);
                out += ')';
            }
        },
        n.v);
}

// ------------------------------------------------------------- equality ----

bool nodes_equal(const Node& a, const Node& b);

bool ptr_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return !a && !b;
    return nodes_equal(*a, *b);
}

bool nodes_equal(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, LiteralNode>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, ConstNode>) {
                return na.which == nb.which;
            } else if constexpr (std::is_same_v<T, VarNode>) {
                return na.index == nb.index;
            } else if constexpr (std::is_same_v<T, BoundTNode>) {
                return true;
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                return na.op == nb.op && ptr_equal(na.lhs, nb.lhs) && ptr_equal(na.rhs, nb.rhs);
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                return na.fn == nb.fn && ptr_equal(na.arg, nb.arg);
            } else if constexpr (std::is_same_v<T, PowNode>) {
                return na.exponent == nb.exponent && ptr_equal(na.base, nb.base);
            } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
                if (na.branches.size() != nb.branches.size()) return false;
                for (std::size_t i = 0; i < na.branches.size(); ++i) {
                    const auto& ba = na.branches[i];
                    const auto& bb = nb.branches[i];
                    if (ba.rel != bb.rel || !ptr_equal(ba.lhs, bb.lhs) ||
                        !ptr_equal(ba.rhs, bb.rhs) || !ptr_equal(ba.value, bb.value))
                        return false;
                }
                return ptr_equal(na.otherwise, nb.otherwise);
            } else if constexpr (std::is_same_v<T, Integral0Node>) {
                return ptr_equal(na.integrand, nb.integrand) && ptr_equal(na.upper, nb.upper);
            }
        },
        a.v);
}

} // namespace

Expr Expr::parse(std::string_view source) {
    Parser p(source);
    Expr e;
    NodePtr root = p.parse_all(&e.max_var_, &e.uses_integral_);
    e.root_ = std::move(root);
    return e;
}

std::string Expr::print() const {
    std::string out;
    if (root_) print_node(*root_, out);
    return out;
}

double Expr::evaluate(std::span<const double> point, const IntegralResolver* resolver) const {
    if (!root_) throw DomainError("evaluating an empty expression");
    EvalCtx ctx;
    ctx.point = point;
    ctx.resolver = resolver;
    return eval_node(*root_, ctx);
}

bool Expr::structurally_equal(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodes_equal(*root_, *other.root_);
}

double evaluate_node(const Node& n, std::span<const double> point,
                     const IntegralResolver* resolver) {
    EvalCtx ctx;
    ctx.point = point;
    ctx.resolver = resolver;
    return eval_node(n, ctx);
}

} // namespace gencvx
