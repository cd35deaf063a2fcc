#include "wentzell/expression.hpp"

#include "wentzell/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace wentzell {

namespace {

enum Fun { kCos, kSin, kTan, kAtan, kExp, kLog, kSqrt, kAbs };

int fun_by_name(const std::string& name) {
    if (name == "cos") return kCos;
    if (name == "sin") return kSin;
    if (name == "tan") return kTan;
    if (name == "atan" || name == "arctan") return kAtan;
    if (name == "exp") return kExp;
    if (name == "log") return kLog;
    if (name == "sqrt") return kSqrt;
    if (name == "abs") return kAbs;
    return -1;
}

} // namespace

class ExprParser {
public:
    ExprParser(const std::string& text, Expression& out) : text_(text), out_(out) {}

    void run() {
        out_.root_ = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ConfigError("unexpected input at position " + std::to_string(pos_) +
                              " in expression '" + text_ + "'");
        }
    }

private:
    const std::string& text_;
    Expression& out_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int add(Expression::Node n) {
        out_.nodes_.push_back(n);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        while (true) {
            const char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                int rhs = parse_term();
                Expression::Node n;
                n.kind = Expression::Kind::Binary;
                n.op = c;
                n.a = lhs;
                n.b = rhs;
                lhs = add(n);
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        while (true) {
            const char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                int rhs = parse_factor();
                Expression::Node n;
                n.kind = Expression::Kind::Binary;
                n.op = c;
                n.a = lhs;
                n.b = rhs;
                lhs = add(n);
            } else {
                return lhs;
            }
        }
    }

    // Exponentiation binds tighter than unary minus: -x^2 is -(x^2).
    int parse_factor() {
        const char c = peek();
        if (c == '-' || c == '+') {
            ++pos_;
            int inner = parse_factor();
            if (c == '+') return inner;
            Expression::Node n;
            n.kind = Expression::Kind::Unary;
            n.op = '-';
            n.a = inner;
            return add(n);
        }
        int base = parse_primary();
        if (peek() == '^') {
            ++pos_;
            int expo = parse_factor(); // right associative
            Expression::Node n;
            n.kind = Expression::Kind::Binary;
            n.op = '^';
            n.a = base;
            n.b = expo;
            return add(n);
        }
        return base;
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ConfigError("unexpected end of expression '" + text_ + "'");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(text_.c_str() + pos_, &end);
            pos_ = static_cast<std::size_t>(end - text_.c_str());
            Expression::Node n;
            n.kind = Expression::Kind::Number;
            n.number = v;
            return add(n);
        }
        if (c == '(') {
            ++pos_;
            int inner = parse_expr();
            if (!eat(')')) throw ConfigError("missing ')' in expression '" + text_ + "'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string word = text_.substr(start, pos_ - start);
            if (eat('(')) {
                const int f = fun_by_name(word);
                if (f < 0) throw ConfigError("unknown function '" + word + "'");
                int arg = parse_expr();
                if (!eat(')')) throw ConfigError("missing ')' after " + word);
                Expression::Node n;
                n.kind = Expression::Kind::Call;
                n.fun = f;
                n.a = arg;
                return add(n);
            }
            Expression::Node n;
            if (word == "x") {
                n.kind = Expression::Kind::Var;
                n.var = 0;
            } else if (word == "y") {
                n.kind = Expression::Kind::Var;
                n.var = 1;
            } else if (word == "s") {
                n.kind = Expression::Kind::Var;
                n.var = 2;
            } else if (word == "pi") {
                n.kind = Expression::Kind::Number;
                n.number = 4.0 * std::atan(1.0);
            } else {
                throw ConfigError("unknown identifier '" + word + "'");
            }
            return add(n);
        }
        throw ConfigError(std::string("unexpected character '") + c + "' in expression '" + text_ + "'");
    }
};

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = text;
    ExprParser(text, e).run();
    return e;
}

double Expression::eval_node(int idx, double x, double y, double s) const {
    const Node& n = nodes_[idx];
    switch (n.kind) {
        case Kind::Number: return n.number;
        case Kind::Var: return n.var == 0 ? x : (n.var == 1 ? y : s);
        case Kind::Unary: return -eval_node(n.a, x, y, s);
        case Kind::Binary: {
            const double a = eval_node(n.a, x, y, s);
            const double b = eval_node(n.b, x, y, s);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
        case Kind::Call: {
            const double a = eval_node(n.a, x, y, s);
            switch (n.fun) {
                case kCos: return std::cos(a);
                case kSin: return std::sin(a);
                case kTan: return std::tan(a);
                case kAtan: return std::atan(a);
                case kExp: return std::exp(a);
                case kLog: return std::log(a);
                case kSqrt: return std::sqrt(a);
                case kAbs: return std::abs(a);
            }
            return 0.0;
        }
    }
    return 0.0;
}

double Expression::eval(double x, double y, double s) const {
    return eval_node(root_, x, y, s);
}

} // namespace wentzell
