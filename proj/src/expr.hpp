#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drw_forms.hpp"

namespace drw {

struct Expr {
    enum class Kind { Int, Teich, V, DV, F, R, PLine, D, Dlog, Add, Sub, Mul };
    Kind kind = Kind::Int;
    int64_t value = 0;  // Int literal, Teichmueller coefficient, or V/dV exponent
    int64_t expo = 0;   // Teichmueller exponent
    std::vector<std::shared_ptr<const Expr>> kids;
    int line = 1, col = 1;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Throws Error(Parse) with "line L, column C" on malformed input and Error(Degree) on degree mismatch.
ExprPtr parse_expr(const std::string& src);
int expr_degree(const Expr& e);
std::string print_expr(const Expr& e);
// structural equality, ignoring source positions
bool same_tree(const Expr& a, const Expr& b);

// evaluates at level ctx.n; inner levels follow from the operators
Form eval_expr(const Expr& e, const PrimeContext& ctx);
Form parse_form(const std::string& src, const PrimeContext& ctx);

}  // namespace drw
