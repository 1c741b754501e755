#ifndef BISLAT_LATTICE_HPP
#define BISLAT_LATTICE_HPP

#include <cstdint>
#include <optional>

#include "bislat/measure.hpp"
#include "bislat/norms.hpp"
#include "bislat/report.hpp"
#include "bislat/rng.hpp"
#include "bislat/spaces.hpp"

namespace bislat {

enum class Relation { holds, fails, undetermined };

/// Verdict on E c1 F (inclusion constant at most 1). `constant_estimate` is a
/// certified lower bound on c(E,F): the ratio is attained by the witness.
/// `holds` is only reported when an analytic rule applies; sampling alone can
/// refute, so the sampled no-counterexample outcome stays `undetermined`.
struct OrderVerdict {
    Relation relation = Relation::undetermined;
    double constant_estimate = 0.0;
    std::optional<FunctionVector> witness;
    bool analytic = false;
};

/// Analytic certificate that E c1 F on the given measure space. Covers
/// structural rules (cap below its arms, arms below plus, scale monotonicity),
/// Lp chains (probability and counting), and the norming chain
/// Linf c1 E c1 L1 on probability spaces.
bool inclusion_holds_analytic(const ExprPtr& E, const ExprPtr& F, const SpacePtr& space);

OrderVerdict inclusion_constant(const ExprPtr& E, const ExprPtr& F, const SpacePtr& space,
                                int samples, std::uint64_t seed,
                                const NormOptions& opts = {});

ExprPtr meet(const ExprPtr& E, const ExprPtr& F);  // E cap F
ExprPtr join(const ExprPtr& E, const ExprPtr& F);  // E + F

/// Modular projections onto the order interval [E, F] (declared E c1 F):
/// lambda(H) = (H meet F) join E, rho(H) = (H join E) meet F. Both land in
/// [E, F] and fix its members; the lattice is modular iff they agree.
ExprPtr lambda_proj(const ExprPtr& E, const ExprPtr& F, const ExprPtr& H);
ExprPtr rho_proj(const ExprPtr& E, const ExprPtr& F, const ExprPtr& H);

struct LawOptions {
    int samples = 200;
    double tol = 1e-4;          // law tolerance (relative norm deviation)
    std::uint64_t seed = 1;
    NormOptions solve;          // solver tolerance/budget per norm evaluation
};

// Fixed-space checks (random vectors only).
LawReport check_lattice_axioms(const ExprPtr& E, const ExprPtr& F, const ExprPtr& G,
                               const SpacePtr& space, const LawOptions& opts);
LawReport check_modularity(const ExprPtr& E, const ExprPtr& F, const ExprPtr& H,
                           const SpacePtr& space, const LawOptions& opts);
LawReport check_distributivity(const ExprPtr& E, const ExprPtr& F, const ExprPtr& G,
                               const SpacePtr& space, const LawOptions& opts);
LawReport uniqueness_probe(const ExprPtr& E, const ExprPtr& F, const ExprPtr& G,
                           const SpacePtr& space, const LawOptions& opts);

// Generator-driven suites: fresh random space, spaces and vector per instance.
LawReport run_axioms_suite(const LawOptions& opts);
LawReport run_modularity_suite(const LawOptions& opts);
LawReport run_distributivity_suite(const LawOptions& opts);
LawReport run_distributivity_inequality_suite(const LawOptions& opts);
LawReport run_uniqueness_suite(const LawOptions& opts);
LawReport dedekind_demo(const LawOptions& opts);

// Randomized generation shared by suites, tests and the CLI.
struct TreeGenOptions {
    int max_depth = 3;
    int max_sum_nodes = 1;
    bool allow_scale = true;
};

SpacePtr random_space(Rng& rng, int min_atoms = 2, int max_atoms = 6,
                      MeasureKind kind = MeasureKind::probability);
ExprPtr random_tree(Rng& rng, const TreeGenOptions& gen = {});
FunctionVector random_vector(Rng& rng, const SpacePtr& space);

}  // namespace bislat

#endif
