#include "bislat/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "bislat/report.hpp"

namespace bislat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Token {
    enum Kind { ident, number, lparen, rparen, comma, dot, end } kind;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Token::end;
            return t;
        }
        char c = text_[pos_];
        if (c == '(') return simple(Token::lparen, "(");
        if (c == ')') return simple(Token::rparen, ")");
        if (c == ',') return simple(Token::comma, ",");
        if (c == '.') return simple(Token::dot, ".");
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            std::size_t start = pos_;
            const char* begin = text_.c_str() + pos_;
            char* endp = nullptr;
            double v = std::strtod(begin, &endp);
            if (endp == begin) throw ParseError("malformed number", line_, col_);
            std::size_t len = static_cast<std::size_t>(endp - begin);
            t.kind = Token::number;
            t.value = v;
            t.text = text_.substr(start, len);
            advance(len);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                advance(1);
            }
            t.kind = Token::ident;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

private:
    Token simple(Token::Kind k, const char* s) {
        Token t;
        t.kind = k;
        t.text = s;
        t.line = line_;
        t.col = col_;
        advance(1);
        return t;
    }
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance(1);
        }
    }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { shift(); }

    AstPtr parse() {
        AstPtr e = expr();
        expect(Token::end, "trailing input after expression");
        return e;
    }

private:
    void shift() { tok_ = lex_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k) throw ParseError(what, tok_.line, tok_.col);
    }

    void eat(Token::Kind k, const std::string& what) {
        expect(k, what);
        shift();
    }

    double number_or_inf() {
        if (tok_.kind == Token::ident && tok_.text == "inf") {
            shift();
            return kInf;
        }
        expect(Token::number, "expected a number or `inf`");
        double v = tok_.value;
        shift();
        return v;
    }

    AstPtr make(AstKind kind, int line, int col) {
        ExprAst a;
        a.kind = kind;
        a.line = line;
        a.col = col;
        return std::make_shared<const ExprAst>(std::move(a));
    }

    AstPtr expr() {
        expect(Token::ident, "expected an expression");
        int line = tok_.line, col = tok_.col;
        std::string head = tok_.text;
        shift();

        if (head == "ZERO") {
            return make(AstKind::zero_space, line, col);
        }
        if (head == "sym") {
            eat(Token::dot, "expected `.` after `sym`");
            expect(Token::ident, "expected a profile name after `sym.`");
            std::string prof = tok_.text;
            shift();
            if (prof == "sup") {
                return make(AstKind::sym_sup, line, col);
            }
            eat(Token::lparen, "expected `(` after profile name");
            ExprAst a;
            a.line = line;
            a.col = col;
            if (prof == "Lp") {
                a.kind = AstKind::sym_lp;
                a.num = number_or_inf();
            } else if (prof == "orlicz") {
                expect(Token::ident, "expected a Young-function name");
                a.kind = AstKind::sym_orlicz;
                a.name = tok_.text;
                shift();
            } else if (prof == "lorentz") {
                a.kind = AstKind::sym_lorentz;
                a.nums.push_back(number_or_inf());
                while (tok_.kind == Token::comma) {
                    shift();
                    a.nums.push_back(number_or_inf());
                }
            } else {
                throw ParseError("unknown profile `sym." + prof + "`", line, col);
            }
            eat(Token::rparen, "expected `)` to close the profile");
            return std::make_shared<const ExprAst>(std::move(a));
        }

        eat(Token::lparen, "expected `(` after `" + head + "`");
        ExprAst a;
        a.line = line;
        a.col = col;
        if (head == "Lp") {
            a.kind = AstKind::lp;
            a.num = number_or_inf();
        } else if (head == "orlicz") {
            expect(Token::ident, "expected a Young-function name");
            a.kind = AstKind::orlicz;
            a.name = tok_.text;
            shift();
        } else if (head == "cap" || head == "plus") {
            a.kind = head == "cap" ? AstKind::cap2 : AstKind::plus2;
            a.kids.push_back(expr());
            eat(Token::comma, "expected `,` between operands");
            a.kids.push_back(expr());
        } else if (head == "dual" || head == "zero") {
            a.kind = head == "dual" ? AstKind::dual1 : AstKind::zero1;
            a.kids.push_back(expr());
        } else if (head == "scale") {
            a.kind = AstKind::scale1;
            a.num = number_or_inf();
            eat(Token::comma, "expected `,` after the scale factor");
            a.kids.push_back(expr());
        } else if (head == "Cap" || head == "Plus") {
            a.kind = head == "Cap" ? AstKind::big_cap : AstKind::big_plus;
            a.kids.push_back(expr());
            while (tok_.kind == Token::comma) {
                shift();
                a.kids.push_back(expr());
            }
        } else {
            throw ParseError("unknown constructor or leaf `" + head + "`", line, col);
        }
        eat(Token::rparen, "expected `)` to close `" + head + "`");
        return std::make_shared<const ExprAst>(std::move(a));
    }

    Lexer lex_;
    Token tok_;
};

std::string join_kids(const AstPtr& ast) {
    std::string s;
    for (std::size_t i = 0; i < ast->kids.size(); ++i) {
        if (i) s += ",";
        s += print_ast(ast->kids[i]);
    }
    return s;
}

std::string num_str(double v) {
    if (std::isinf(v)) return "inf";
    return format_double(v);
}

}  // namespace

AstPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_ast(const AstPtr& ast) {
    switch (ast->kind) {
        case AstKind::lp: return "Lp(" + num_str(ast->num) + ")";
        case AstKind::orlicz: return "orlicz(" + ast->name + ")";
        case AstKind::sym_lp: return "sym.Lp(" + num_str(ast->num) + ")";
        case AstKind::sym_orlicz: return "sym.orlicz(" + ast->name + ")";
        case AstKind::sym_lorentz: {
            std::string s = "sym.lorentz(";
            for (std::size_t i = 0; i < ast->nums.size(); ++i) {
                if (i) s += ",";
                s += num_str(ast->nums[i]);
            }
            return s + ")";
        }
        case AstKind::sym_sup: return "sym.sup";
        case AstKind::zero_space: return "ZERO";
        case AstKind::cap2: return "cap(" + join_kids(ast) + ")";
        case AstKind::plus2: return "plus(" + join_kids(ast) + ")";
        case AstKind::dual1: return "dual(" + join_kids(ast) + ")";
        case AstKind::zero1: return "zero(" + join_kids(ast) + ")";
        case AstKind::scale1:
            return "scale(" + num_str(ast->num) + "," + join_kids(ast) + ")";
        case AstKind::big_cap: return "Cap(" + join_kids(ast) + ")";
        case AstKind::big_plus: return "Plus(" + join_kids(ast) + ")";
    }
    return "<bad-ast>";
}

ExprPtr to_space_expr(const AstPtr& ast, double total_mass) {
    switch (ast->kind) {
        case AstKind::lp:
            if (!(ast->num >= 1.0)) {
                throw ParseError("Lp exponent must be in [1, inf]", ast->line, ast->col);
            }
            return lp(ast->num);
        case AstKind::orlicz:
            return orlicz(ast->name);
        case AstKind::sym_lp:
            return profile_leaf(profile_lp(ast->num, total_mass));
        case AstKind::sym_orlicz:
            return profile_leaf(profile_orlicz(ast->name, total_mass));
        case AstKind::sym_lorentz:
            return profile_leaf(profile_lorentz(ast->nums, total_mass));
        case AstKind::sym_sup:
            return profile_leaf(profile_sup(total_mass));
        case AstKind::zero_space:
            throw ParseError("ZERO has no numeric norm", ast->line, ast->col);
        case AstKind::cap2:
            return cap(to_space_expr(ast->kids[0], total_mass),
                       to_space_expr(ast->kids[1], total_mass));
        case AstKind::plus2:
            return plus(to_space_expr(ast->kids[0], total_mass),
                        to_space_expr(ast->kids[1], total_mass));
        case AstKind::dual1:
            return dual(to_space_expr(ast->kids[0], total_mass));
        case AstKind::zero1:
            throw ParseError("zero(...) is symbolic only; use `reduce` or `order --symbolic`",
                             ast->line, ast->col);
        case AstKind::scale1:
            return scale(ast->num, to_space_expr(ast->kids[0], total_mass));
        case AstKind::big_cap: {
            std::vector<ExprPtr> kids;
            for (const auto& k : ast->kids) kids.push_back(to_space_expr(k, total_mass));
            return big_cap(std::move(kids));
        }
        case AstKind::big_plus: {
            std::vector<ExprPtr> kids;
            for (const auto& k : ast->kids) kids.push_back(to_space_expr(k, total_mass));
            return big_plus(std::move(kids));
        }
    }
    throw ParseError("unhandled expression", ast->line, ast->col);
}

SymPtr to_sym_term(const AstPtr& ast) {
    switch (ast->kind) {
        case AstKind::lp:
            if (!(ast->num >= 1.0)) {
                throw ParseError("Lp exponent must be in [1, inf]", ast->line, ast->col);
            }
            return sym_lp(ast->num);
        case AstKind::orlicz:
            return sym_orlicz(ast->name);
        case AstKind::zero_space:
            return sym_zero_space();
        case AstKind::cap2:
            return sym_cap(to_sym_term(ast->kids[0]), to_sym_term(ast->kids[1]));
        case AstKind::plus2:
            return sym_plus(to_sym_term(ast->kids[0]), to_sym_term(ast->kids[1]));
        case AstKind::dual1:
            return sym_dual(to_sym_term(ast->kids[0]));
        case AstKind::zero1:
            return sym_zero_part(to_sym_term(ast->kids[0]));
        case AstKind::scale1:
            throw ParseError("scale(...) has no symbolic counterpart", ast->line, ast->col);
        case AstKind::sym_lp:
        case AstKind::sym_orlicz:
        case AstKind::sym_lorentz:
        case AstKind::sym_sup:
            throw ParseError("sym.* profiles are numeric leaves, not symbolic terms", ast->line,
                             ast->col);
        case AstKind::big_cap:
        case AstKind::big_plus:
            throw ParseError("Cap/Plus families are numeric only; use nested cap/plus",
                             ast->line, ast->col);
    }
    throw ParseError("unhandled expression", ast->line, ast->col);
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (a->kind != b->kind || a->num != b->num || a->nums != b->nums || a->name != b->name ||
        a->kids.size() != b->kids.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!ast_equal(a->kids[i], b->kids[i])) return false;
    }
    return true;
}

}  // namespace bislat
