#include "expression.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace shiftlab::detail {

struct Expression::Node {
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Lt, Le, Gt, Ge, Eq, Ne, Abs, Min, Max };
    Kind kind = Kind::Number;
    ExactScalar number;
    std::size_t variable = 0;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    NodePtr parse() {
        NodePtr n = cmp();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    NodePtr cmp() {
        NodePtr lhs = sum();
        static const std::pair<std::string_view, Node::Kind> ops[] = {
            {"<=", Node::Kind::Le}, {">=", Node::Kind::Ge}, {"==", Node::Kind::Eq},
            {"!=", Node::Kind::Ne}, {"<", Node::Kind::Lt},  {">", Node::Kind::Gt}};
        for (const auto& [tok, kind] : ops) {
            if (accept(tok)) return make(kind, {lhs, sum()});
        }
        return lhs;
    }

    NodePtr sum() {
        NodePtr lhs = product();
        for (;;) {
            if (accept("+")) lhs = make(Node::Kind::Add, {lhs, product()});
            else if (accept("-")) lhs = make(Node::Kind::Sub, {lhs, product()});
            else return lhs;
        }
    }

    NodePtr product() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept("*")) lhs = make(Node::Kind::Mul, {lhs, unary()});
            else if (accept("/")) lhs = make(Node::Kind::Div, {lhs, unary()});
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept("-")) return make(Node::Kind::Neg, {unary()});
        if (accept("+")) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept("^")) return make(Node::Kind::Pow, {base, unary()});
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (accept("(")) {
            NodePtr n = cmp();
            expect(")");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = ExactScalar::parse(s_.substr(start, pos_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "abs" || name == "min" || name == "max") {
                expect("(");
                std::vector<NodePtr> args{cmp()};
                while (accept(",")) args.push_back(cmp());
                expect(")");
                Node::Kind kind = name == "abs" ? Node::Kind::Abs : name == "min" ? Node::Kind::Min : Node::Kind::Max;
                if (kind == Node::Kind::Abs && args.size() != 1) fail("abs takes one argument");
                if (kind != Node::Kind::Abs && args.size() < 2) fail(name + " takes at least two arguments");
                return make(kind, std::move(args));
            }
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) fail("unknown name '" + name + "'");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Variable;
            n->variable = static_cast<std::size_t>(it - vars_.begin());
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

ExactScalar eval(const Node& n, const std::vector<std::int64_t>& values) {
    using K = Node::Kind;
    auto arg = [&](std::size_t i) { return eval(*n.args[i], values); };
    auto truth = [](bool b) { return ExactScalar{b ? 1 : 0}; };
    switch (n.kind) {
        case K::Number: return n.number;
        case K::Variable: return ExactScalar{values.at(n.variable)};
        case K::Neg: return -arg(0);
        case K::Add: return arg(0) + arg(1);
        case K::Sub: return arg(0) - arg(1);
        case K::Mul: return arg(0) * arg(1);
        case K::Div: return arg(0) / arg(1);
        case K::Pow: {
            ExactScalar e = arg(1);
            if (!e.is_integer()) throw std::domain_error("expression: non-integer exponent");
            if (e.abs() > ExactScalar{4096}) throw std::domain_error("expression: exponent too large");
            return arg(0).pow(static_cast<std::int64_t>(e.to_double()));
        }
        case K::Lt: return truth(arg(0) < arg(1));
        case K::Le: return truth(arg(0) <= arg(1));
        case K::Gt: return truth(arg(0) > arg(1));
        case K::Ge: return truth(arg(0) >= arg(1));
        case K::Eq: return truth(arg(0) == arg(1));
        case K::Ne: return truth(arg(0) != arg(1));
        case K::Abs: return arg(0).abs();
        case K::Min:
        case K::Max: {
            ExactScalar best = arg(0);
            for (std::size_t i = 1; i < n.args.size(); ++i) {
                ExactScalar v = arg(i);
                if (n.kind == K::Min ? v < best : v > best) best = v;
            }
            return best;
        }
    }
    throw std::logic_error("expression: bad node");
}

}  // namespace

Expression::Expression(std::string text, std::vector<std::string> variables)
    : text_(std::move(text)), variables_(std::move(variables)) {
    root_ = Parser(text_, variables_).parse();
}

ExactScalar Expression::evaluate(const std::vector<std::int64_t>& values) const {
    return eval(*root_, values);
}

}  // namespace shiftlab::detail
