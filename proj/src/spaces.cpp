#include "bislat/spaces.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bislat {

namespace {

ExprPtr node(SpaceExpr e) { return std::make_shared<const SpaceExpr>(std::move(e)); }

std::string num_to_string(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = std::strtod(probe, nullptr);
        if (back == v) return probe;
    }
    return buf;
}

}  // namespace

ExprPtr lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lp leaf needs p in [1, inf]");
    SpaceExpr e;
    e.kind = ExprKind::lp_leaf;
    e.p = p;
    return node(std::move(e));
}

ExprPtr orlicz(const std::string& young_name) {
    SpaceExpr e;
    e.kind = ExprKind::orlicz_leaf;
    e.young = young_function(young_name);
    return node(std::move(e));
}

ExprPtr profile_leaf(ProfilePtr profile) {
    if (!profile) throw std::invalid_argument("profile leaf needs a profile");
    SpaceExpr e;
    e.kind = ExprKind::profile_leaf;
    e.profile = std::move(profile);
    return node(std::move(e));
}

ExprPtr cap(ExprPtr a, ExprPtr b) {
    if (!a || !b) throw std::invalid_argument("cap needs two operands");
    SpaceExpr e;
    e.kind = ExprKind::intersect;
    e.kids = {std::move(a), std::move(b)};
    return node(std::move(e));
}

ExprPtr plus(ExprPtr a, ExprPtr b) {
    if (!a || !b) throw std::invalid_argument("plus needs two operands");
    SpaceExpr e;
    e.kind = ExprKind::sum;
    e.kids = {std::move(a), std::move(b)};
    return node(std::move(e));
}

ExprPtr dual(ExprPtr a) {
    if (!a) throw std::invalid_argument("dual needs an operand");
    SpaceExpr e;
    e.kind = ExprKind::dual;
    e.kids = {std::move(a)};
    return node(std::move(e));
}

ExprPtr scale(double c, ExprPtr a) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale factor must be positive");
    if (!a) throw std::invalid_argument("scale needs an operand");
    SpaceExpr e;
    e.kind = ExprKind::scale;
    e.factor = c;
    e.kids = {std::move(a)};
    return node(std::move(e));
}

ExprPtr big_cap(std::vector<ExprPtr> kids) {
    if (kids.empty()) throw std::invalid_argument("Cap needs at least one operand");
    SpaceExpr e;
    e.kind = ExprKind::big_intersect;
    e.kids = std::move(kids);
    return node(std::move(e));
}

ExprPtr big_plus(std::vector<ExprPtr> kids) {
    if (kids.empty()) throw std::invalid_argument("Plus needs at least one operand");
    SpaceExpr e;
    e.kind = ExprKind::big_sum;
    e.kids = std::move(kids);
    return node(std::move(e));
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::lp_leaf:
            return a->p == b->p;
        case ExprKind::orlicz_leaf:
            return a->young == b->young;
        case ExprKind::profile_leaf:
            return a->profile == b->profile ||
                   (a->profile->id == b->profile->id &&
                    a->profile->domain_mass == b->profile->domain_mass &&
                    a->profile->weights == b->profile->weights &&
                    a->profile->p == b->profile->p);
        case ExprKind::scale:
            if (a->factor != b->factor) return false;
            break;
        default:
            break;
    }
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!expr_equal(a->kids[i], b->kids[i])) return false;
    }
    return true;
}

std::string expr_to_string(const ExprPtr& e) {
    if (!e) return "<null>";
    switch (e->kind) {
        case ExprKind::lp_leaf:
            return "Lp(" + num_to_string(e->p) + ")";
        case ExprKind::orlicz_leaf:
            return "orlicz(" + e->young->name + ")";
        case ExprKind::profile_leaf:
            return e->profile->id;
        case ExprKind::intersect:
            return "cap(" + expr_to_string(e->kids[0]) + "," + expr_to_string(e->kids[1]) + ")";
        case ExprKind::sum:
            return "plus(" + expr_to_string(e->kids[0]) + "," + expr_to_string(e->kids[1]) + ")";
        case ExprKind::dual:
            return "dual(" + expr_to_string(e->kids[0]) + ")";
        case ExprKind::scale:
            return "scale(" + num_to_string(e->factor) + "," + expr_to_string(e->kids[0]) + ")";
        case ExprKind::big_intersect: {
            std::string s = "Cap(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += ",";
                s += expr_to_string(e->kids[i]);
            }
            return s + ")";
        }
        case ExprKind::big_sum: {
            std::string s = "Plus(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += ",";
                s += expr_to_string(e->kids[i]);
            }
            return s + ")";
        }
    }
    return "<bad-expr>";
}

int sum_node_count(const ExprPtr& e) {
    if (!e) return 0;
    int c = (e->kind == ExprKind::sum || e->kind == ExprKind::big_sum) ? 1 : 0;
    for (const auto& k : e->kids) c += sum_node_count(k);
    return c;
}

bool is_norming(const ExprPtr& e) {
    if (!e) return false;
    switch (e->kind) {
        case ExprKind::lp_leaf:
            return true;
        case ExprKind::orlicz_leaf:
            return true;  // registry Young functions are normalized to M(1)=1
        case ExprKind::profile_leaf:
            return e->profile->norming;
        case ExprKind::scale:
            return e->factor == 1.0 && is_norming(e->kids[0]);
        case ExprKind::intersect:
        case ExprKind::sum:
        case ExprKind::big_intersect:
        case ExprKind::big_sum: {
            for (const auto& k : e->kids) {
                if (!is_norming(k)) return false;
            }
            return true;
        }
        case ExprKind::dual:
            return is_norming(e->kids[0]);
    }
    return false;
}

}  // namespace bislat
