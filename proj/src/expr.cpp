#include "videq/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace videq {

namespace {

constexpr std::array<std::string_view, 9> kBuiltins = {
    "sin", "cos", "tan", "exp", "log", "sqrt", "abs", "sinh", "cosh"};

bool is_builtin(std::string_view name) {
    for (auto b : kBuiltins)
        if (b == name) return true;
    return false;
}

struct Token {
    enum class Kind { Number, Name, Op, LParen, RParen, End };
    Kind kind;
    std::size_t pos;
    double value = 0.0;
    std::string text;
    char op = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_.kind = Token::Kind::Name;
            tok_.text.assign(src_.substr(i_, j - i_));
            i_ = j;
        } else if (c == '(') {
            tok_.kind = Token::Kind::LParen;
            ++i_;
        } else if (c == ')') {
            tok_.kind = Token::Kind::RParen;
            ++i_;
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            tok_.kind = Token::Kind::Op;
            tok_.op = c;
            ++i_;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", i_);
        }
    }

    void lex_number() {
        std::size_t j = i_;
        while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.'))
            ++j;
        if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
            if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                ++k;
                while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
                j = k;
            }
        }
        double v = 0.0;
        auto res = std::from_chars(src_.data() + i_, src_.data() + j, v);
        if (res.ec != std::errc() || res.ptr != src_.data() + j)
            throw ParseError("malformed number", i_);
        if (!std::isfinite(v)) throw ParseError("literal is not finite", i_);
        tok_.kind = Token::Kind::Number;
        tok_.value = v;
        i_ = j;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

using detail::Node;
using detail::NodePtr;

class Parser {
public:
    Parser(std::string_view src, const std::set<std::string>& vars) : lex_(src), vars_(vars) {}

    NodePtr run() {
        NodePtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("unexpected trailing input", t.pos);
        return e;
    }

private:
    // expr := term (('+'|'-') term)*
    NodePtr expr() {
        NodePtr lhs = term();
        while (lex_.peek().kind == Token::Kind::Op &&
               (lex_.peek().op == '+' || lex_.peek().op == '-')) {
            Token op = lex_.next();
            lhs = binary(op, lhs, term());
        }
        return lhs;
    }

    // term := factor (('*'|'/') factor)*
    NodePtr term() {
        NodePtr lhs = factor();
        while (lex_.peek().kind == Token::Kind::Op &&
               (lex_.peek().op == '*' || lex_.peek().op == '/')) {
            Token op = lex_.next();
            lhs = binary(op, lhs, factor());
        }
        return lhs;
    }

    // factor := '-'? power   (unary minus binds looser than '^')
    NodePtr factor() {
        if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '-') {
            Token op = lex_.next();
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Negate;
            n->pos = op.pos;
            n->lhs = power();
            return n;
        }
        return power();
    }

    // power := atom ('^' power)?   ('^' right-associative)
    NodePtr power() {
        NodePtr base = atom();
        if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '^') {
            Token op = lex_.next();
            return binary(op, base, power());
        }
        return base;
    }

    // atom := number | name | name '(' expr ')' | '(' expr ')'
    NodePtr atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Token::Kind::Number: {
            Token tok = lex_.next();
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Literal;
            n->pos = tok.pos;
            n->value = tok.value;
            return n;
        }
        case Token::Kind::Name: {
            Token tok = lex_.next();
            if (lex_.peek().kind == Token::Kind::LParen) {
                if (!is_builtin(tok.text))
                    throw ParseError("unknown function '" + tok.text + "'", tok.pos);
                lex_.next();
                NodePtr arg = expr();
                expect_rparen();
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Call;
                n->pos = tok.pos;
                n->name = tok.text;
                n->lhs = arg;
                return n;
            }
            if (tok.text != "pi" && tok.text != "e" && !vars_.contains(tok.text))
                throw ParseError("unknown variable '" + tok.text + "'", tok.pos);
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Variable;
            n->pos = tok.pos;
            n->name = tok.text;
            return n;
        }
        case Token::Kind::LParen: {
            lex_.next();
            NodePtr inner = expr();
            expect_rparen();
            return inner;
        }
        default:
            throw ParseError("expected number, name, or '('", t.pos);
        }
    }

    void expect_rparen() {
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::RParen)
            throw ParseError("expected ')'", t.pos);
        lex_.next();
    }

    NodePtr binary(const Token& op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->pos = op.pos;
        n->op = op.op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    Lexer lex_;
    const std::set<std::string>& vars_;
};

double call_builtin(const std::string& name, double x, std::size_t pos) {
    if (name == "sin") return std::sin(x);
    if (name == "cos") return std::cos(x);
    if (name == "tan") return std::tan(x);
    if (name == "exp") return std::exp(x);
    if (name == "log") {
        if (x <= 0.0) throw EvalError("log of non-positive argument", pos);
        return std::log(x);
    }
    if (name == "sqrt") {
        if (x < 0.0) throw EvalError("sqrt of negative argument", pos);
        return std::sqrt(x);
    }
    if (name == "abs") return std::fabs(x);
    if (name == "sinh") return std::sinh(x);
    if (name == "cosh") return std::cosh(x);
    throw EvalError("unknown function '" + name + "'", pos);
}

double eval_node(const Node& n, const Bindings& bindings) {
    switch (n.kind) {
    case Node::Kind::Literal:
        return n.value;
    case Node::Kind::Variable: {
        auto it = bindings.find(n.name);
        if (it != bindings.end()) return it->second;
        if (n.name == "pi") return 3.14159265358979323846;
        if (n.name == "e") return 2.71828182845904523536;
        throw EvalError("missing binding for variable '" + n.name + "'", n.pos);
    }
    case Node::Kind::Negate:
        return -eval_node(*n.lhs, bindings);
    case Node::Kind::Binary: {
        double a = eval_node(*n.lhs, bindings);
        double b = eval_node(*n.rhs, bindings);
        switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
            if (b == 0.0) throw EvalError("division by zero", n.pos);
            return a / b;
        case '^': {
            double r = std::pow(a, b);
            if (std::isnan(r) && !std::isnan(a) && !std::isnan(b))
                throw EvalError("power with invalid base/exponent", n.pos);
            return r;
        }
        }
        throw EvalError("corrupt operator node", n.pos);
    }
    case Node::Kind::Call:
        return call_builtin(n.name, eval_node(*n.lhs, bindings), n.pos);
    }
    throw EvalError("corrupt expression node", n.pos);
}

void render(const Node& n, std::string& out) {
    switch (n.kind) {
    case Node::Kind::Literal: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, n.value);
        out.append(buf, res.ptr);
        break;
    }
    case Node::Kind::Variable:
        out += n.name;
        break;
    case Node::Kind::Negate:
        out += "(-";
        render(*n.lhs, out);
        out += ')';
        break;
    case Node::Kind::Binary:
        out += '(';
        render(*n.lhs, out);
        out += ' ';
        out += n.op;
        out += ' ';
        render(*n.rhs, out);
        out += ')';
        break;
    case Node::Kind::Call:
        out += n.name;
        out += '(';
        render(*n.lhs, out);
        out += ')';
        break;
    }
}

}  // namespace

namespace detail {

bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Node::Kind::Literal:
        return a.value == b.value;
    case Node::Kind::Variable:
        return a.name == b.name;
    case Node::Kind::Negate:
        return structurally_equal(*a.lhs, *b.lhs);
    case Node::Kind::Binary:
        return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
               structurally_equal(*a.rhs, *b.rhs);
    case Node::Kind::Call:
        return a.name == b.name && structurally_equal(*a.lhs, *b.lhs);
    }
    return false;
}

}  // namespace detail

Expression parse(std::string_view text, const std::set<std::string>& allowed_vars) {
    if (text.empty()) throw ParseError("empty input", 0);
    bool blank = true;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) throw ParseError("empty input", 0);
    Parser p(text, allowed_vars);
    return Expression(p.run());
}

double Expression::evaluate(const Bindings& bindings) const {
    if (!root_) throw EvalError("empty expression", 0);
    return eval_node(*root_, bindings);
}

std::string Expression::to_text() const {
    if (!root_) return "";
    std::string out;
    render(*root_, out);
    return out;
}

bool Expression::operator==(const Expression& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return detail::structurally_equal(*root_, *other.root_);
}

Expression Expression::literal(double v) {
    auto n = std::make_shared<detail::Node>();
    n->kind = detail::Node::Kind::Literal;
    n->value = v;
    Expression e;
    e.root_ = std::move(n);
    return e;
}

}  // namespace videq
