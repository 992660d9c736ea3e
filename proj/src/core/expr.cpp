#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>

#include "special.hpp"

namespace vex {

struct Expr::Node {
    enum class Kind { Number, Variable, Constant, Negate, Binary, Call };
    Kind kind = Kind::Number;
    double value = 0.0;  // Number, Constant
    int variable = 0;    // 0..2 for x1..x3, -1 for r
    char op = 0;         // Binary
    std::string name;    // Constant, Call
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

struct FunctionInfo {
    const char* name;
    std::size_t arity;
    std::function<double(const std::vector<double>&)> apply;
};

const std::vector<FunctionInfo>& functionTable() {
    static const std::vector<FunctionInfo> table = {
        {"sin", 1, [](const auto& a) { return std::sin(a[0]); }},
        {"cos", 1, [](const auto& a) { return std::cos(a[0]); }},
        {"exp", 1, [](const auto& a) { return std::exp(a[0]); }},
        {"log", 1,
         [](const auto& a) {
             if (!(a[0] > 0.0)) fail(ErrorCode::EvalError, "log of nonpositive value " + formatDouble(a[0]));
             return std::log(a[0]);
         }},
        {"abs", 1, [](const auto& a) { return std::abs(a[0]); }},
        {"min", 2, [](const auto& a) { return std::min(a[0], a[1]); }},
        {"max", 2, [](const auto& a) { return std::max(a[0], a[1]); }},
        {"step", 3, [](const auto& a) { return a[2] < 0.0 ? a[0] : a[1]; }},
    };
    return table;
}

const FunctionInfo* findFunction(std::string_view name) {
    for (const auto& f : functionTable())
        if (name == f.name) return &f;
    return nullptr;
}

std::optional<double> constantValue(std::string_view name) {
    if (name == "pi") return kPi;
    if (name == "e") return std::exp(1.0);
    return std::nullopt;
}

std::shared_ptr<Expr::Node> makeNode(Kind kind) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    return n;
}

class Parser {
public:
    Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

    NodePtr parseAll() {
        NodePtr e = expr();
        skipSpace();
        if (pos_ < src_.size()) syntax("an operator or end of input");
        return e;
    }

private:
    [[noreturn]] void syntax(const std::string& expected) const {
        const std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
        fail(ErrorCode::SyntaxError,
             "column " + std::to_string(pos_ + 1) + ": expected " + expected + ", found " + found);
    }

    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(char op, NodePtr a, NodePtr b) {
        auto n = makeNode(Kind::Binary);
        n->op = op;
        n->args = {std::move(a), std::move(b)};
        return n;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = binary('+', lhs, term());
            else if (accept('-'))
                lhs = binary('-', lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = binary('*', lhs, unary());
            else if (accept('/'))
                lhs = binary('/', lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = makeNode(Kind::Negate);
            n->args = {unary()};
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skipSpace();
        if (pos_ >= src_.size()) syntax("a number, name or '('");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) syntax("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        syntax("a number, name or '('");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return pos_ > s;
        };
        bool any = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            any = digits() || any;
        }
        if (!any) {
            pos_ = start;
            syntax("a number");
        }
        // Exponent only when digits follow, so "2e" stays 2 followed by e.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
            pos_ = start;
            syntax("a representable number");
        }
        auto n = makeNode(Kind::Number);
        n->value = v;
        return n;
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string id(src_.substr(start, pos_ - start));
        const std::string where = "column " + std::to_string(start + 1) + ": ";

        if (const FunctionInfo* fn = findFunction(id)) {
            if (!accept('(')) syntax("'(' after " + id);
            auto n = makeNode(Kind::Call);
            n->name = id;
            n->args.push_back(expr());
            while (accept(',')) n->args.push_back(expr());
            if (!accept(')')) syntax("',' or ')'");
            if (n->args.size() != fn->arity)
                fail(ErrorCode::SyntaxError, where + id + " takes " + std::to_string(fn->arity) + " argument(s), got " +
                                                 std::to_string(n->args.size()));
            return n;
        }
        if (auto c = constantValue(id)) {
            auto n = makeNode(Kind::Constant);
            n->name = id;
            n->value = *c;
            return n;
        }
        if (id == "r") {
            auto n = makeNode(Kind::Variable);
            n->variable = -1;
            return n;
        }
        if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '9') {
            const int axis = id[1] - '1';
            if (axis >= kMaxDim) fail(ErrorCode::UnknownIdentifier, where + "unknown identifier '" + id + "'");
            if (axis >= dim_)
                fail(ErrorCode::DimensionError,
                     where + "'" + id + "' is not available in dimension " + std::to_string(dim_));
            auto n = makeNode(Kind::Variable);
            n->variable = axis;
            return n;
        }
        fail(ErrorCode::UnknownIdentifier, where + "unknown identifier '" + id + "'");
    }

    std::string_view src_;
    int dim_;
    std::size_t pos_ = 0;
};

double eval(const Expr::Node& node, const Point& x, int dim) {
    switch (node.kind) {
        case Kind::Number:
        case Kind::Constant: return node.value;
        case Kind::Variable: {
            if (node.variable >= 0) return x[node.variable];
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
            return std::sqrt(r2);
        }
        case Kind::Negate: return -eval(*node.args[0], x, dim);
        case Kind::Binary: {
            const double a = eval(*node.args[0], x, dim);
            const double b = eval(*node.args[1], x, dim);
            switch (node.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) fail(ErrorCode::EvalError, "division by zero");
                    return a / b;
                case '^': return std::pow(a, b);
            }
            break;
        }
        case Kind::Call: {
            std::vector<double> args;
            for (const auto& a : node.args) args.push_back(eval(*a, x, dim));
            return findFunction(node.name)->apply(args);
        }
    }
    fail(ErrorCode::EvalError, "malformed expression tree");
}

void print(const Expr::Node& node, std::string& out) {
    switch (node.kind) {
        case Kind::Number: out += formatDouble(node.value); return;
        case Kind::Constant: out += node.name; return;
        case Kind::Variable:
            out += node.variable < 0 ? std::string("r") : "x" + std::to_string(node.variable + 1);
            return;
        case Kind::Negate:
            out += "(-";
            print(*node.args[0], out);
            out += ")";
            return;
        case Kind::Binary:
            out += "(";
            print(*node.args[0], out);
            out += node.op;
            print(*node.args[1], out);
            out += ")";
            return;
        case Kind::Call:
            out += node.name + "(";
            for (std::size_t i = 0; i < node.args.size(); ++i) {
                if (i) out += ",";
                print(*node.args[i], out);
            }
            out += ")";
            return;
    }
}

bool equal(const Expr::Node& a, const Expr::Node& b) {
    if (a.kind != b.kind || a.op != b.op || a.name != b.name || a.variable != b.variable ||
        a.args.size() != b.args.size())
        return false;
    if ((a.kind == Kind::Number || a.kind == Kind::Constant) && !(a.value == b.value)) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(*a.args[i], *b.args[i])) return false;
    return true;
}

}  // namespace

double Expr::evaluate(const Point& x) const { return eval(*root_, x, dim_); }

std::string Expr::print() const {
    std::string out;
    vex::print(*root_, out);
    return out;
}

bool Expr::operator==(const Expr& other) const { return dim_ == other.dim_ && equal(*root_, *other.root_); }

Expr parse(std::string_view source, int dim) {
    if (dim < 1 || dim > kMaxDim) fail(ErrorCode::DimensionError, "expression dimension must be 1, 2 or 3");
    Parser p(source, dim);
    return Expr(p.parseAll(), dim);
}

SampledField sampleToField(const Expr& e, const Grid& g) {
    if (e.dim() != g.dim())
        fail(ErrorCode::DimensionError, "expression dimension " + std::to_string(e.dim()) +
                                            " does not match grid dimension " + std::to_string(g.dim()));
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.node(i);
        auto where = [&] {
            std::string s = "(";
            for (int d = 0; d < g.dim(); ++d) s += (d ? ", " : "") + formatDouble(x[d]);
            return s + ")";
        };
        try {
            v[i] = e.evaluate(x);
        } catch (const Error& err) {
            fail(ErrorCode::EvalError, "at node " + where() + ": " + err.what());
        }
        if (!std::isfinite(v[i])) fail(ErrorCode::EvalError, "at node " + where() + ": non-finite value");
    }
    return SampledField(g, std::move(v));
}

}  // namespace vex
