#ifndef BISLAT_PARSER_HPP
#define BISLAT_PARSER_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bislat/spaces.hpp"
#include "bislat/symbolic.hpp"

namespace bislat {

/// Space-expression mini-language:
///   expr  := leaf | cap(expr,expr) | plus(expr,expr) | dual(expr)
///          | zero(expr) | scale(num,expr) | Cap(expr,...) | Plus(expr,...)
///   leaf  := Lp(p) | orlicz(name) | sym.Lp(p) | sym.orlicz(name)
///          | sym.lorentz(w1,...,wk) | sym.sup | ZERO
/// Whitespace-insensitive; p accepts `inf`.

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg), line(line), col(col) {}
    int line;
    int col;
};

enum class AstKind {
    lp,
    orlicz,
    sym_lp,
    sym_orlicz,
    sym_lorentz,
    sym_sup,
    zero_space,
    cap2,
    plus2,
    dual1,
    zero1,
    scale1,
    big_cap,
    big_plus,
};

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
    AstKind kind;
    double num = 0.0;           // Lp exponent or scale factor
    std::vector<double> nums;   // lorentz weights
    std::string name;           // orlicz id
    std::vector<AstPtr> kids;
    int line = 1;
    int col = 1;
};

AstPtr parse_expr(const std::string& text);

/// Canonical text form; parse(print(ast)) is structurally identical to ast.
std::string print_ast(const AstPtr& ast);

/// Numeric semantics. `total_mass` binds sym.* profile leaves to the measure
/// space the vectors will live on. zero(...) has no numeric meaning.
ExprPtr to_space_expr(const AstPtr& ast, double total_mass);

/// Symbolic semantics. sym.* profile leaves and scale(...) have no symbolic
/// counterpart.
SymPtr to_sym_term(const AstPtr& ast);

bool ast_equal(const AstPtr& a, const AstPtr& b);

}  // namespace bislat

#endif
