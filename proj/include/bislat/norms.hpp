#ifndef BISLAT_NORMS_HPP
#define BISLAT_NORMS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bislat/measure.hpp"
#include "bislat/result.hpp"
#include "bislat/spaces.hpp"

namespace bislat {

enum class DualPolicy {
    rewrite_first,  // apply Koethe rewrites, numeric fallback
    numeric_only,   // generic maximizer on the unit ball (cross-validation path)
};

struct NormOptions {
    double tol = 1e-6;
    long budget = 100000;  // outer objective evaluations per solve
    std::uint64_t seed = 0x51a7bb71d4c3e2f9ULL;
    DualPolicy dual_policy = DualPolicy::rewrite_first;
};

/// Evaluate the norm of x in the space described by the expression tree.
/// Closed-form leaves are exact; sum and generic dual nodes are solved to the
/// requested tolerance. The vector's measure space supplies the weights.
NormResult norm(const ExprPtr& space, const FunctionVector& x,
                const NormOptions& opts = {});

/// max(norm_E, norm_F); exact given the sub-evaluations.
NormResult intersect_norm(const ExprPtr& E, const ExprPtr& F,
                          const FunctionVector& x, const NormOptions& opts = {});

/// inf { ||u||_E + ||x-u||_F : u + v = x }, searched over sign-aligned
/// decompositions 0 <= u.sign(x) <= |x| (a componentwise median argument shows
/// the restriction loses nothing for monotone norms). The scaled L1/Linf pair
/// gets an exact clipping path. Witness is the E-side part.
NormResult sum_norm(const ExprPtr& E, const ExprPtr& F, const FunctionVector& x,
                    const NormOptions& opts = {});

/// ||f||_{E'} = sup { sum mu_i f_i x_i : ||x||_E <= 1 }. Weighted Lp duals are
/// closed-form Lq; cap/plus/scale/dual composites are rewritten by the Koethe
/// identities before any numeric work.
NormResult dual_norm(const ExprPtr& E, const FunctionVector& f,
                     const NormOptions& opts = {});

/// The generic maximizer path with no rewrites; reported value is a certified
/// lower bound attained by the returned witness.
NormResult dual_norm_numeric(const ExprPtr& E, const FunctionVector& f,
                             const NormOptions& opts = {});

/// ||x||_E - ||x||_{E''} with the bidual evaluated by an outer numeric
/// maximization over the ball of E' (whose gauge uses the rewrite path).
double bidual_gap(const ExprPtr& E, const FunctionVector& x,
                  const NormOptions& opts = {});

NormResult big_intersect_norm(const std::vector<ExprPtr>& spaces,
                              const FunctionVector& x, const NormOptions& opts = {});

/// inf { sum_i ||u_i||_{E_i} : sum_i u_i = x }, joint search over sign-aligned
/// splittings of x across the family.
NormResult big_sum_norm(const std::vector<ExprPtr>& spaces, const FunctionVector& x,
                        const NormOptions& opts = {});

struct NormGrad {
    double value = 0.0;
    std::vector<double> grad;  // one partial per atom; a subdifferential element
};

/// Norm value together with a subgradient in the vector entries. Sum and dual
/// nodes use Danskin selections through their solver witnesses, so the
/// subgradient is exact up to the inner solve tolerance.
NormGrad norm_subgrad(const ExprPtr& space, const FunctionVector& x,
                      const NormOptions& opts = {});

/// Koethe rewrite of the dual space when fully derivable: Lp -> Lq,
/// (E cap F)' -> E' + F', (E + F)' -> E' cap F', (cE)' -> (1/c)E',
/// E''' -> E'. Returns nullopt if any leaf has no symbolic dual.
std::optional<ExprPtr> dual_expr(const ExprPtr& E);

/// Conjugate exponent: 1/p + 1/q = 1 (with the 1 <-> inf convention).
double conjugate_exponent(double p);

}  // namespace bislat

#endif
