#ifndef BISLAT_SPACES_HPP
#define BISLAT_SPACES_HPP

#include <memory>
#include <string>
#include <vector>

#include "bislat/measure.hpp"
#include "bislat/symmetric.hpp"
#include "bislat/young.hpp"

namespace bislat {

enum class ExprKind {
    lp_leaf,
    orlicz_leaf,
    profile_leaf,
    intersect,
    sum,
    dual,
    scale,
    big_intersect,
    big_sum,
};

/// An immutable expression tree over norm families. Leaves are measure-free:
/// the measure arrives with the vector at evaluation time (profile leaves
/// additionally pin a total-mass domain).
struct SpaceExpr {
    ExprKind kind;
    double p = 0.0;                       // lp_leaf, in [1, inf]
    const YoungFunction* young = nullptr;  // orlicz_leaf
    ProfilePtr profile;                   // profile_leaf
    double factor = 1.0;                  // scale
    std::vector<std::shared_ptr<const SpaceExpr>> kids;
};

using ExprPtr = std::shared_ptr<const SpaceExpr>;

ExprPtr lp(double p);
ExprPtr orlicz(const std::string& young_name);
ExprPtr profile_leaf(ProfilePtr profile);
ExprPtr cap(ExprPtr a, ExprPtr b);
ExprPtr plus(ExprPtr a, ExprPtr b);
ExprPtr dual(ExprPtr a);
ExprPtr scale(double c, ExprPtr a);
ExprPtr big_cap(std::vector<ExprPtr> kids);
ExprPtr big_plus(std::vector<ExprPtr> kids);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string expr_to_string(const ExprPtr& e);

/// Number of `sum`/`big_sum` nodes in the tree (each one costs an inner solve).
int sum_node_count(const ExprPtr& e);

/// True when the tree provably satisfies the norming condition on a
/// probability space: indicators of measure-1 sets have norm 1. Lp and
/// registry-Orlicz leaves are norming; cap/plus/dual preserve it; scale
/// breaks it unless the factor is 1.
bool is_norming(const ExprPtr& e);

}  // namespace bislat

#endif
