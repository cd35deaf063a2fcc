#pragma once

#include <string>
#include <vector>

namespace wentzell {

// Small arithmetic expression evaluator for coefficient and load fields.
// Supports numbers, + - * / ^, parentheses, the variables x, y, s (arc
// length), the constant pi, and the functions cos, sin, tan, atan (alias
// arctan), exp, log, sqrt, abs.
class Expression {
public:
    static Expression parse(const std::string& text);

    double eval(double x, double y, double s) const;
    const std::string& text() const { return text_; }

private:
    enum class Kind { Number, Var, Binary, Unary, Call };

    struct Node {
        Kind kind;
        double number = 0.0;
        int var = 0;  // 0=x 1=y 2=s
        char op = 0;  // + - * / ^ for Binary, '-' for Unary
        int fun = 0;
        int a = -1, b = -1;
    };

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string text_;

    friend class ExprParser;
    double eval_node(int idx, double x, double y, double s) const;
};

} // namespace wentzell
