#include "bislat/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bislat/norms.hpp"
#include "bislat/young.hpp"

namespace bislat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SymPtr mk(SymTerm t) { return std::make_shared<const SymTerm>(std::move(t)); }

}  // namespace

std::string tri_name(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "?";
}

SymPtr sym_lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lp term needs p in [1, inf]");
    SymTerm t;
    t.kind = SymKind::lp;
    t.p = p;
    return mk(std::move(t));
}

SymPtr sym_orlicz(const std::string& young_name) {
    const YoungFunction* y = young_function(young_name);
    SymTerm t;
    t.kind = SymKind::orlicz;
    t.orlicz_name = y->name;
    t.delta2 = y->delta2;
    return mk(std::move(t));
}

SymPtr sym_zero_space() {
    SymTerm t;
    t.kind = SymKind::zero_space;
    return mk(std::move(t));
}

SymPtr sym_dual(SymPtr a) {
    SymTerm t;
    t.kind = SymKind::dual;
    t.kids = {std::move(a)};
    return mk(std::move(t));
}

SymPtr sym_zero_part(SymPtr a) {
    SymTerm t;
    t.kind = SymKind::zero_part;
    t.kids = {std::move(a)};
    return mk(std::move(t));
}

SymPtr sym_cap(SymPtr a, SymPtr b) {
    SymTerm t;
    t.kind = SymKind::intersect;
    t.kids = {std::move(a), std::move(b)};
    return mk(std::move(t));
}

SymPtr sym_plus(SymPtr a, SymPtr b) {
    SymTerm t;
    t.kind = SymKind::sum;
    t.kids = {std::move(a), std::move(b)};
    return mk(std::move(t));
}

bool sym_equal(const SymPtr& a, const SymPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SymKind::lp:
            return a->p == b->p;
        case SymKind::orlicz:
            return a->orlicz_name == b->orlicz_name && a->delta2 == b->delta2;
        default:
            break;
    }
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!sym_equal(a->kids[i], b->kids[i])) return false;
    }
    return true;
}

std::string sym_to_string(const SymPtr& t) {
    if (!t) return "<null>";
    switch (t->kind) {
        case SymKind::lp:
            if (std::isinf(t->p)) return "Lp(inf)";
            {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g", t->p);
                return std::string("Lp(") + buf + ")";
            }
        case SymKind::orlicz:
            return "orlicz(" + t->orlicz_name + ")";
        case SymKind::zero_space:
            return "ZERO";
        case SymKind::dual:
            return "dual(" + sym_to_string(t->kids[0]) + ")";
        case SymKind::zero_part:
            return "zero(" + sym_to_string(t->kids[0]) + ")";
        case SymKind::intersect:
            return "cap(" + sym_to_string(t->kids[0]) + "," + sym_to_string(t->kids[1]) + ")";
        case SymKind::sum:
            return "plus(" + sym_to_string(t->kids[0]) + "," + sym_to_string(t->kids[1]) + ")";
    }
    return "<bad-term>";
}

namespace {

void log_rule(std::vector<RuleApp>* trace, const char* rule, const SymPtr& before,
              const SymPtr& after) {
    if (trace) trace->push_back({rule, sym_to_string(before), sym_to_string(after)});
}

SymPtr reduce_impl(const SymPtr& t, std::vector<RuleApp>* trace, int depth) {
    if (depth > 64) throw std::logic_error("reduce: term too deep");
    if (t->kind == SymKind::lp || t->kind == SymKind::orlicz || t->kind == SymKind::zero_space) {
        return t;
    }

    // Children first.
    std::vector<SymPtr> kids;
    bool changed = false;
    for (const auto& k : t->kids) {
        SymPtr r = reduce_impl(k, trace, depth + 1);
        changed = changed || r != k;
        kids.push_back(std::move(r));
    }
    SymPtr cur = t;
    if (changed) {
        SymTerm copy = *t;
        copy.kids = std::move(kids);
        cur = mk(std::move(copy));
    }

    // Head rules, re-reducing after every rewrite.
    switch (cur->kind) {
        case SymKind::dual: {
            const SymPtr& a = cur->kids[0];
            if (a->kind == SymKind::lp) {
                SymPtr out = sym_lp(conjugate_exponent(a->p));
                log_rule(trace, "dual-Lp", cur, out);
                return out;
            }
            if (a->kind == SymKind::dual && a->kids[0]->kind == SymKind::dual) {
                SymPtr out = sym_dual(a->kids[0]->kids[0]);
                log_rule(trace, "triple-dual", cur, out);
                return reduce_impl(out, trace, depth + 1);
            }
            if (a->kind == SymKind::intersect) {
                SymPtr out = sym_plus(sym_dual(a->kids[0]), sym_dual(a->kids[1]));
                log_rule(trace, "dual-cap", cur, out);
                return reduce_impl(out, trace, depth + 1);
            }
            if (a->kind == SymKind::sum) {
                SymPtr out = sym_cap(sym_dual(a->kids[0]), sym_dual(a->kids[1]));
                log_rule(trace, "dual-plus", cur, out);
                return reduce_impl(out, trace, depth + 1);
            }
            return cur;  // dual of ZERO / Orlicz / zero-part residue stays symbolic
        }
        case SymKind::zero_part: {
            const SymPtr& a = cur->kids[0];
            if (a->kind == SymKind::zero_part) {
                log_rule(trace, "zero-part-idempotent", cur, a);
                return a;
            }
            if (a->kind == SymKind::zero_space) {
                log_rule(trace, "zero-part-of-zero", cur, a);
                return a;
            }
            if (a->kind == SymKind::lp) {
                if (std::isinf(a->p)) {
                    SymPtr out = sym_zero_space();
                    log_rule(trace, "zero-part-Linf", cur, out);
                    return out;
                }
                log_rule(trace, "zero-part-Lp", cur, a);
                return a;
            }
            if (a->kind == SymKind::orlicz && a->delta2) {
                log_rule(trace, "zero-part-orlicz-delta2", cur, a);
                return a;
            }
            return cur;
        }
        case SymKind::intersect: {
            if (cur->kids[0]->kind == SymKind::zero_space ||
                cur->kids[1]->kind == SymKind::zero_space) {
                SymPtr out = sym_zero_space();
                log_rule(trace, "cap-zero", cur, out);
                return out;
            }
            return cur;
        }
        case SymKind::sum: {
            if (cur->kids[0]->kind == SymKind::zero_space) {
                log_rule(trace, "plus-zero", cur, cur->kids[1]);
                return cur->kids[1];
            }
            if (cur->kids[1]->kind == SymKind::zero_space) {
                log_rule(trace, "plus-zero", cur, cur->kids[0]);
                return cur->kids[0];
            }
            return cur;
        }
        default:
            return cur;
    }
}

}  // namespace

SymPtr reduce(const SymPtr& t) { return reduce_impl(t, nullptr, 0); }

SymPtr reduce_traced(const SymPtr& t, std::vector<RuleApp>& trace) {
    return reduce_impl(t, &trace, 0);
}

SymPtr zero_part(const SymPtr& S) { return reduce(sym_zero_part(S)); }
SymPtr koethe_dual(const SymPtr& S) { return reduce(sym_dual(S)); }

// ---------------------------------------------------------------------------
// Derivable order engine
// ---------------------------------------------------------------------------

namespace {

struct Universe {
    std::vector<SymPtr> terms;

    int find(const SymPtr& t) const {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (sym_equal(terms[i], t)) return static_cast<int>(i);
        }
        return -1;
    }
    int add(const SymPtr& t) {
        int i = find(t);
        if (i >= 0) return i;
        terms.push_back(t);
        return static_cast<int>(terms.size()) - 1;
    }
};

void add_subterms(Universe& u, const SymPtr& t) {
    u.add(t);
    for (const auto& k : t->kids) add_subterms(u, reduce(k));
}

struct Fact {
    int from;
    int to;
    std::string rule;
    int prem1 = -1;
    int prem2 = -1;
};

struct OrderEngine {
    Universe u;
    std::vector<Fact> facts;
    std::map<std::pair<int, int>, int> edge;

    bool has(int a, int b) const { return edge.count({a, b}) > 0; }

    bool assert_fact(int a, int b, std::string rule, int p1 = -1, int p2 = -1) {
        if (a < 0 || b < 0 || has(a, b)) return false;
        facts.push_back({a, b, std::move(rule), p1, p2});
        edge[{a, b}] = static_cast<int>(facts.size()) - 1;
        return true;
    }

    void unfold(int fact_idx, std::vector<std::string>& out, int depth) const {
        if (depth > 64) return;
        const Fact& f = facts[static_cast<std::size_t>(fact_idx)];
        if (f.prem1 >= 0) unfold(f.prem1, out, depth + 1);
        if (f.prem2 >= 0) unfold(f.prem2, out, depth + 1);
        std::string line = f.rule + ": " + sym_to_string(u.terms[static_cast<std::size_t>(f.from)]) +
                           " c1 " + sym_to_string(u.terms[static_cast<std::size_t>(f.to)]);
        if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(line);
    }
};

bool is_catalog_leaf(const SymPtr& t) {
    return t->kind == SymKind::lp || t->kind == SymKind::orlicz;
}

OrderEngine build_engine(const SymPtr& S, const SymPtr& T) {
    OrderEngine eng;
    add_subterms(eng.u, S);
    add_subterms(eng.u, T);
    eng.u.add(sym_lp(1.0));
    eng.u.add(sym_lp(kInf));

    // Closure of the universe under dual and zero-part, a few rounds deep, so
    // monotone/antitone steps have somewhere to land.
    for (int round = 0; round < 3; ++round) {
        std::vector<SymPtr> snapshot = eng.u.terms;
        for (const auto& t : snapshot) {
            if (eng.u.terms.size() > 96) break;
            if (t->kind != SymKind::zero_space) eng.u.add(reduce(sym_dual(t)));
            eng.u.add(reduce(sym_zero_part(t)));
        }
    }

    const int n = static_cast<int>(eng.u.terms.size());
    for (int i = 0; i < n; ++i) {
        eng.assert_fact(i, i, "reflexivity");
        const SymPtr& t = eng.u.terms[static_cast<std::size_t>(i)];
        // E_0 c1 E
        int zp = eng.u.find(reduce(sym_zero_part(t)));
        if (zp >= 0) eng.assert_fact(zp, i, "zero-part below");
        // E c1 E''
        if (t->kind != SymKind::zero_space) {
            int dd = eng.u.find(reduce(sym_dual(sym_dual(t))));
            if (dd >= 0) eng.assert_fact(i, dd, "below bidual");
        }
        // ZERO at the bottom.
        if (t->kind == SymKind::zero_space) {
            for (int j = 0; j < n; ++j) eng.assert_fact(i, j, "zero space bottom");
        }
        // Structural bounds.
        if (t->kind == SymKind::intersect) {
            eng.assert_fact(i, eng.u.find(t->kids[0]), "cap below left arm");
            eng.assert_fact(i, eng.u.find(t->kids[1]), "cap below right arm");
        }
        if (t->kind == SymKind::sum) {
            eng.assert_fact(eng.u.find(t->kids[0]), i, "plus above left arm");
            eng.assert_fact(eng.u.find(t->kids[1]), i, "plus above right arm");
        }
        // Norming chain on [0,1].
        if (is_catalog_leaf(t)) {
            eng.assert_fact(eng.u.find(sym_lp(kInf)), i, "norming chain Linf c1 E");
            eng.assert_fact(i, eng.u.find(sym_lp(1.0)), "norming chain E c1 L1");
        }
    }
    // Lp chain.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const SymPtr& a = eng.u.terms[static_cast<std::size_t>(i)];
            const SymPtr& b = eng.u.terms[static_cast<std::size_t>(j)];
            if (a->kind == SymKind::lp && b->kind == SymKind::lp && a->p >= b->p) {
                eng.assert_fact(i, j, "Lp chain on [0,1]");
            }
        }
    }

    // Fixpoint over transitivity, duality antitone, zero-part monotone, and
    // the glb/lub introduction rules.
    std::vector<int> dual_of(static_cast<std::size_t>(n), -1);
    std::vector<int> zp_of(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const SymPtr& t = eng.u.terms[static_cast<std::size_t>(i)];
        if (t->kind != SymKind::zero_space) dual_of[static_cast<std::size_t>(i)] = eng.u.find(reduce(sym_dual(t)));
        zp_of[static_cast<std::size_t>(i)] = eng.u.find(reduce(sym_zero_part(t)));
    }

    bool grew = true;
    int guard = 0;
    while (grew && guard++ < 64) {
        grew = false;
        std::vector<Fact> snapshot = eng.facts;
        for (std::size_t fi = 0; fi < snapshot.size(); ++fi) {
            const Fact f = snapshot[fi];
            int a = f.from, b = f.to;
            int fid = eng.edge[{a, b}];
            // antitone duality
            if (dual_of[static_cast<std::size_t>(a)] >= 0 && dual_of[static_cast<std::size_t>(b)] >= 0) {
                grew |= eng.assert_fact(dual_of[static_cast<std::size_t>(b)],
                                        dual_of[static_cast<std::size_t>(a)],
                                        "duality antitone", fid);
            }
            // zero-part monotone
            if (zp_of[static_cast<std::size_t>(a)] >= 0 && zp_of[static_cast<std::size_t>(b)] >= 0) {
                grew |= eng.assert_fact(zp_of[static_cast<std::size_t>(a)],
                                        zp_of[static_cast<std::size_t>(b)],
                                        "zero-part monotone", fid);
            }
            // transitivity
            for (int c = 0; c < n; ++c) {
                auto it = eng.edge.find({b, c});
                if (it != eng.edge.end()) {
                    grew |= eng.assert_fact(a, c, "transitivity", fid, it->second);
                }
            }
        }
        // glb / lub introductions
        for (int i = 0; i < n; ++i) {
            const SymPtr& t = eng.u.terms[static_cast<std::size_t>(i)];
            if (t->kind == SymKind::intersect) {
                int l = eng.u.find(t->kids[0]);
                int r = eng.u.find(t->kids[1]);
                for (int c = 0; c < n; ++c) {
                    auto e1 = eng.edge.find({c, l});
                    auto e2 = eng.edge.find({c, r});
                    if (e1 != eng.edge.end() && e2 != eng.edge.end()) {
                        grew |= eng.assert_fact(c, i, "cap greatest lower bound", e1->second,
                                                e2->second);
                    }
                }
            }
            if (t->kind == SymKind::sum) {
                int l = eng.u.find(t->kids[0]);
                int r = eng.u.find(t->kids[1]);
                for (int c = 0; c < n; ++c) {
                    auto e1 = eng.edge.find({l, c});
                    auto e2 = eng.edge.find({r, c});
                    if (e1 != eng.edge.end() && e2 != eng.edge.end()) {
                        grew |= eng.assert_fact(i, c, "plus least upper bound", e1->second,
                                                e2->second);
                    }
                }
            }
        }
    }
    return eng;
}

}  // namespace

OrderAnswer sym_order_leq(const SymPtr& S0, const SymPtr& T0) {
    SymPtr S = reduce(S0);
    SymPtr T = reduce(T0);
    OrderAnswer ans;

    OrderEngine eng = build_engine(S, T);
    int si = eng.u.find(S);
    int ti = eng.u.find(T);
    auto it = eng.edge.find({si, ti});
    if (it != eng.edge.end()) {
        ans.value = Tri::yes;
        eng.unfold(it->second, ans.derivation, 0);
        return ans;
    }

    // Catalog refutations.
    if (S->kind == SymKind::lp && T->kind == SymKind::lp && S->p < T->p) {
        ans.value = Tri::no;
        ans.derivation.push_back(
            "refuted: on [0,1] Lp(p) c1 Lp(q) fails for p < q "
            "(small-support indicators scale as mass^(1/p))");
        return ans;
    }
    if (T->kind == SymKind::zero_space && S->kind != SymKind::zero_space) {
        ans.value = Tri::no;
        ans.derivation.push_back("refuted: only the trivial space embeds in ZERO");
        return ans;
    }
    ans.value = Tri::unknown;
    return ans;
}

// ---------------------------------------------------------------------------
// Membership and the Galois maps
// ---------------------------------------------------------------------------

namespace {

Tri foundation_status(const SymPtr& t) {
    if (t->kind == SymKind::zero_space) return Tri::no;
    if (is_catalog_leaf(t)) return Tri::yes;
    return Tri::unknown;
}

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::no || b == Tri::no) return Tri::no;
    if (a == Tri::yes && b == Tri::yes) return Tri::yes;
    return Tri::unknown;
}

}  // namespace

MembershipFlags membership(const SymPtr& S0) {
    SymPtr S = reduce(S0);
    MembershipFlags f;

    SymPtr zp = reduce(sym_zero_part(S));
    f.zero_part_is_foundation = foundation_status(zp);

    SymPtr d = reduce(sym_dual(S));
    SymPtr dzp = reduce(sym_zero_part(d));
    f.dual_zero_part_is_foundation = foundation_status(dzp);

    f.in_J0 = tri_and(f.zero_part_is_foundation, f.dual_zero_part_is_foundation);

    if (sym_equal(zp, S)) {
        f.in_J00 = Tri::yes;
    } else if (zp->kind == SymKind::zero_space) {
        f.in_J00 = Tri::no;  // the zero part is trivial, the space is not
    } else if (S->kind == SymKind::orlicz && !S->delta2) {
        f.in_J00 = Tri::no;  // zero part is a proper foundation without Delta_2
    } else {
        f.in_J00 = Tri::unknown;
    }

    SymPtr dd = reduce(sym_dual(sym_dual(S)));
    if (sym_equal(dd, S)) {
        f.in_Jprime = Tri::yes;
    } else if (S->kind == SymKind::zero_space) {
        f.in_Jprime = Tri::no;
    } else {
        f.in_Jprime = Tri::unknown;
    }
    return f;
}

MappedTerm k_map(const SymPtr& S) {
    MappedTerm m;
    m.term = reduce(sym_dual(sym_zero_part(S)));
    m.in_J0 = membership(S).in_J0;
    return m;
}

MappedTerm kprime_map(const SymPtr& S) {
    MappedTerm m;
    m.term = reduce(sym_zero_part(sym_dual(S)));
    m.in_J0 = membership(S).in_J0;
    return m;
}

// ---------------------------------------------------------------------------
// Law suites
// ---------------------------------------------------------------------------

namespace {

// Order query where `inverse` swaps the arguments (the J0* ordering).
Tri ordered_leq(const SymPtr& a, const SymPtr& b, bool inverse) {
    OrderAnswer ans = inverse ? sym_order_leq(b, a) : sym_order_leq(a, b);
    return ans.value;
}

void tally(LawReport& rep, Tri result, const std::string& what,
           const std::vector<std::string>& exprs) {
    ++rep.instances;
    if (result == Tri::yes) return;
    if (result == Tri::unknown) {
        ++rep.undetermined;
        return;
    }
    record_violation(rep, 1.0, LawWitness{exprs, {}, {}, what});
}

}  // namespace

LawReport check_galois(const std::vector<SymPtr>& catalog) {
    LawReport rep;
    rep.law = "galois";
    rep.tol = 0.0;

    std::vector<SymPtr> members;
    for (const auto& e0 : catalog) {
        SymPtr e = reduce(e0);
        if (membership(e).in_J0 != Tri::yes) {
            ++rep.instances;
            ++rep.undetermined;
            continue;
        }
        members.push_back(e);
    }

    for (const auto& E : members) {
        for (const auto& F : members) {
            // Bullet 1: E c1 F implies k(E) above k(F) in the inverse order.
            if (sym_order_leq(E, F).value == Tri::yes) {
                Tri r = ordered_leq(k_map(E).term, k_map(F).term, true);
                tally(rep, r, "galois bullet 1 (k antitone)",
                      {sym_to_string(E), sym_to_string(F)});
            }
            // Bullet 2: F c1 E (i.e. E below F in the inverse order) implies
            // k'(E) c1 k'(F).
            if (sym_order_leq(F, E).value == Tri::yes) {
                Tri r = ordered_leq(kprime_map(E).term, kprime_map(F).term, false);
                tally(rep, r, "galois bullet 2 (k' monotone across orders)",
                      {sym_to_string(E), sym_to_string(F)});
            }
        }
    }
    for (const auto& E : members) {
        Tri b3 = ordered_leq(kprime_map(k_map(E).term).term, E, false);
        tally(rep, b3, "galois bullet 3 (k'k below identity)", {sym_to_string(E)});
        Tri b4 = ordered_leq(k_map(kprime_map(E).term).term, E, true);
        tally(rep, b4, "galois bullet 4 (kk' below identity in J0*)", {sym_to_string(E)});

        // Four-inclusion theorem.
        SymPtr E0 = reduce(sym_zero_part(E));
        SymPtr Ed = reduce(sym_dual(E));
        SymPtr t1l = reduce(sym_dual(sym_dual(E0)));
        SymPtr t1r = reduce(sym_dual(sym_dual(E)));
        tally(rep, sym_order_leq(t1l, t1r).value, "four-inclusion 1: (E0)'' c1 E''",
              {sym_to_string(t1l), sym_to_string(t1r)});
        SymPtr t2r = reduce(sym_dual(sym_zero_part(Ed)));
        tally(rep, sym_order_leq(t1r, t2r).value, "four-inclusion 2: E'' c1 ((E')0)'",
              {sym_to_string(t1r), sym_to_string(t2r)});
        SymPtr t3l = reduce(sym_dual(sym_zero_part(sym_dual(E0))));
        tally(rep, sym_order_leq(t3l, t2r).value, "four-inclusion 3: (((E0)')0)' c1 ((E')0)'",
              {sym_to_string(t3l), sym_to_string(t2r)});
        tally(rep, sym_order_leq(t1l, t3l).value, "four-inclusion 4: (E0)'' c1 (((E0)')0)'",
              {sym_to_string(t1l), sym_to_string(t3l)});
    }
    finish_report(rep);
    return rep;
}

std::string closure_op_name(ClosureOp op) {
    switch (op) {
        case ClosureOp::zero_part_inverse: return "zero-part on J0*";
        case ClosureOp::bidual: return "bidual on J";
        case ClosureOp::k_after_kprime: return "k after k' on J0*";
        case ClosureOp::kprime_after_k: return "k' after k on J0";
    }
    return "?";
}

LawReport check_closure(ClosureOp op, const std::vector<SymPtr>& catalog) {
    LawReport rep;
    rep.law = "closure";
    rep.tol = 0.0;
    rep.note = closure_op_name(op);

    const bool inverse = op == ClosureOp::zero_part_inverse || op == ClosureOp::k_after_kprime;
    auto apply = [&](const SymPtr& t) -> SymPtr {
        switch (op) {
            case ClosureOp::zero_part_inverse: return reduce(sym_zero_part(t));
            case ClosureOp::bidual: return reduce(sym_dual(sym_dual(t)));
            case ClosureOp::k_after_kprime: return k_map(kprime_map(t).term).term;
            case ClosureOp::kprime_after_k: return kprime_map(k_map(t).term).term;
        }
        return t;
    };

    std::vector<SymPtr> members;
    for (const auto& e0 : catalog) members.push_back(reduce(e0));

    auto equal_both_ways = [&](const SymPtr& a, const SymPtr& b) -> Tri {
        if (sym_equal(a, b)) return Tri::yes;
        Tri x = sym_order_leq(a, b).value;
        Tri y = sym_order_leq(b, a).value;
        if (x == Tri::yes && y == Tri::yes) return Tri::yes;
        if (x == Tri::no || y == Tri::no) return Tri::no;
        return Tri::unknown;
    };

    for (const auto& E : members) {
        SymPtr pe = apply(E);
        if (pe->kind == SymKind::zero_space) {
            // Outside the lattice of maximal-width spaces; flagged, not failed.
            ++rep.instances;
            ++rep.undetermined;
            continue;
        }
        // Extensive in the operator's order.
        Tri ext = inverse ? sym_order_leq(pe, E).value : sym_order_leq(E, pe).value;
        tally(rep, ext, "closure: extensive", {sym_to_string(E), sym_to_string(pe)});
        // Idempotent.
        Tri idem = equal_both_ways(apply(pe), pe);
        tally(rep, idem, "closure: idempotent", {sym_to_string(E), sym_to_string(pe)});
    }
    // Monotone over derivably ordered pairs.
    for (const auto& A : members) {
        for (const auto& B : members) {
            if (sym_equal(A, B)) continue;
            Tri leq = ordered_leq(A, B, inverse);
            if (leq != Tri::yes) continue;
            Tri mono = ordered_leq(apply(A), apply(B), inverse);
            tally(rep, mono, "closure: monotone", {sym_to_string(A), sym_to_string(B)});
        }
    }
    // Fixed-point characterizations.
    if (op == ClosureOp::bidual || op == ClosureOp::zero_part_inverse) {
        for (const auto& E : members) {
            SymPtr pe = apply(E);
            Tri fixed = sym_equal(pe, E) ? Tri::yes : equal_both_ways(pe, E);
            MembershipFlags mf = membership(E);
            Tri flag = op == ClosureOp::bidual ? mf.in_Jprime : mf.in_J00;
            ++rep.instances;
            if (fixed == Tri::unknown || flag == Tri::unknown) {
                ++rep.undetermined;
            } else if (fixed != flag) {
                record_violation(rep, 1.0,
                                 LawWitness{{sym_to_string(E)},
                                            {},
                                            {},
                                            std::string("fixed point vs membership: fixed=") +
                                                tri_name(fixed) + " flag=" + tri_name(flag)});
            }
        }
    }
    finish_report(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Numeric instantiation
// ---------------------------------------------------------------------------

std::optional<ExprPtr> sym_instantiate(const SymPtr& t) {
    switch (t->kind) {
        case SymKind::lp:
            return lp(t->p);
        case SymKind::orlicz:
            return orlicz(t->orlicz_name);
        case SymKind::zero_space:
            return std::nullopt;
        case SymKind::dual: {
            auto k = sym_instantiate(t->kids[0]);
            if (!k) return std::nullopt;
            return dual(*k);
        }
        case SymKind::zero_part:
            // Every norm is order continuous on finitely many atoms.
            return sym_instantiate(t->kids[0]);
        case SymKind::intersect: {
            auto a = sym_instantiate(t->kids[0]);
            auto b = sym_instantiate(t->kids[1]);
            if (!a || !b) return std::nullopt;
            return cap(*a, *b);
        }
        case SymKind::sum: {
            auto a = sym_instantiate(t->kids[0]);
            auto b = sym_instantiate(t->kids[1]);
            if (!a || !b) return std::nullopt;
            return plus(*a, *b);
        }
    }
    return std::nullopt;
}

std::vector<std::pair<SymPtr, SymPtr>> rewrite_rule_samples() {
    std::vector<std::pair<SymPtr, SymPtr>> rules;
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
        rules.emplace_back(sym_dual(sym_lp(p)), sym_lp(conjugate_exponent(p)));
    }
    rules.emplace_back(sym_dual(sym_dual(sym_dual(sym_lp(2.0)))), sym_dual(sym_lp(2.0)));
    rules.emplace_back(sym_dual(sym_dual(sym_dual(sym_orlicz("t2")))), sym_dual(sym_orlicz("t2")));
    rules.emplace_back(sym_dual(sym_cap(sym_lp(1.0), sym_lp(kInf))),
                       sym_plus(sym_lp(kInf), sym_lp(1.0)));
    rules.emplace_back(sym_dual(sym_cap(sym_lp(1.5), sym_lp(3.0))),
                       sym_plus(sym_lp(3.0), sym_lp(1.5)));
    rules.emplace_back(sym_dual(sym_plus(sym_lp(1.0), sym_lp(kInf))),
                       sym_cap(sym_lp(kInf), sym_lp(1.0)));
    rules.emplace_back(sym_dual(sym_plus(sym_lp(2.0), sym_lp(3.0))),
                       sym_cap(sym_lp(2.0), sym_lp(1.5)));
    rules.emplace_back(sym_zero_part(sym_lp(2.0)), sym_lp(2.0));
    rules.emplace_back(sym_zero_part(sym_zero_part(sym_orlicz("exp"))),
                       sym_zero_part(sym_orlicz("exp")));
    return rules;
}

std::vector<SymPtr> lp_catalog(const std::vector<double>& ps) {
    std::vector<SymPtr> cat;
    for (double p : ps) cat.push_back(sym_lp(p));
    return cat;
}

}  // namespace bislat
