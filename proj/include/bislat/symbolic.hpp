#ifndef BISLAT_SYMBOLIC_HPP
#define BISLAT_SYMBOLIC_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bislat/report.hpp"
#include "bislat/spaces.hpp"

namespace bislat {

enum class Tri { yes, no, unknown };

std::string tri_name(Tri t);

enum class SymKind { lp, orlicz, zero_space, dual, zero_part, intersect, sum };

/// Symbolic space terms over the catalog of symmetric spaces on [0,1]:
/// Lp leaves (p in [1,inf]), Orlicz leaves with a Delta_2 flag, the trivial
/// space ZERO (computed results only), and the constructors dual / zero-part /
/// cap / plus.
struct SymTerm;
using SymPtr = std::shared_ptr<const SymTerm>;

struct SymTerm {
    SymKind kind;
    double p = 0.0;
    std::string orlicz_name;
    bool delta2 = false;
    std::vector<SymPtr> kids;
};

SymPtr sym_lp(double p);
SymPtr sym_orlicz(const std::string& young_name);  // delta2 from the registry
SymPtr sym_zero_space();
SymPtr sym_dual(SymPtr a);
SymPtr sym_zero_part(SymPtr a);
SymPtr sym_cap(SymPtr a, SymPtr b);
SymPtr sym_plus(SymPtr a, SymPtr b);

bool sym_equal(const SymPtr& a, const SymPtr& b);
std::string sym_to_string(const SymPtr& t);

struct RuleApp {
    std::string rule;
    std::string before;
    std::string after;
};

/// Confluent normal form under the catalog rewrite rules: iterated zero-part
/// collapses, triple duals collapse, duals distribute over cap/plus, Lp duals
/// close in the catalog, zero-part resolves on leaves, ZERO absorbs cap and is
/// the unit of plus. Irreducible subterms stay symbolic.
SymPtr reduce(const SymPtr& t);
SymPtr reduce_traced(const SymPtr& t, std::vector<RuleApp>& trace);

struct OrderAnswer {
    Tri value = Tri::unknown;
    std::vector<std::string> derivation;  // numbered rule applications for yes/no
};

/// Derivable order S c1 T on [0,1]: true only with a derivation from the rule
/// closure, false only with a catalog refutation, otherwise unknown.
OrderAnswer sym_order_leq(const SymPtr& S, const SymPtr& T);

SymPtr zero_part(const SymPtr& S);
SymPtr koethe_dual(const SymPtr& S);

struct MembershipFlags {
    Tri in_J0 = Tri::unknown;
    Tri in_J00 = Tri::unknown;
    Tri in_Jprime = Tri::unknown;
    Tri zero_part_is_foundation = Tri::unknown;
    Tri dual_zero_part_is_foundation = Tri::unknown;
};

MembershipFlags membership(const SymPtr& S);

struct MappedTerm {
    SymPtr term;
    Tri in_J0 = Tri::unknown;  // precondition flag, the map is computed anyway
};

MappedTerm k_map(const SymPtr& S);       // (E_0)'
MappedTerm kprime_map(const SymPtr& S);  // (E')_0

/// Verifies the four Galois-connexion properties of (k, k') between the
/// inverse-ordered and the normal-ordered catalog, plus the four-inclusion
/// theorem, by rule derivation. Unknown orders mark instances undetermined.
LawReport check_galois(const std::vector<SymPtr>& catalog);

enum class ClosureOp { zero_part_inverse, bidual, k_after_kprime, kprime_after_k };

std::string closure_op_name(ClosureOp op);

/// Monotone + extensive + idempotent in the operator's order, plus the
/// fixed-point characterizations (bidual fixes the dual spaces, zero-part
/// fixes the order-continuous ones).
LawReport check_closure(ClosureOp op, const std::vector<SymPtr>& catalog);

/// Numeric semantics of a term on finite atomic spaces; zero-part is the
/// identity there (every norm is order continuous at finite atom count) and
/// ZERO has no instantiation.
std::optional<ExprPtr> sym_instantiate(const SymPtr& t);

/// Rewrite-rule instances with both sides numerically instantiable, for the
/// isometry cross-check against the norm engine.
std::vector<std::pair<SymPtr, SymPtr>> rewrite_rule_samples();

std::vector<SymPtr> lp_catalog(const std::vector<double>& ps);

}  // namespace bislat

#endif
