#pragma once

// Tiny exact-arithmetic expression language over integer variables.
//
//   expr    := cmp
//   cmp     := sum (("<" | "<=" | ">" | ">=" | "==" | "!=") sum)?
//   sum     := product (("+" | "-") product)*
//   product := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := atom ("^" unary)?
//   atom    := number | name | "(" expr ")" | fn "(" expr ("," expr)* ")"
//   fn      := abs | min | max
//
// Comparisons evaluate to 1 or 0. Exponents must be integers.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "shiftlab/numerics.hpp"

namespace shiftlab::detail {

class Expression {
public:
    struct Node;

    Expression(std::string text, std::vector<std::string> variables);

    [[nodiscard]] ExactScalar evaluate(const std::vector<std::int64_t>& values) const;
    [[nodiscard]] const std::string& text() const { return text_; }

private:
    std::string text_;
    std::vector<std::string> variables_;
    std::shared_ptr<const Node> root_;
};

}  // namespace shiftlab::detail
