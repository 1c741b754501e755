#ifndef BISLAT_SYMMETRIC_LAWS_HPP
#define BISLAT_SYMMETRIC_LAWS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bislat/lattice.hpp"
#include "bislat/measure.hpp"
#include "bislat/report.hpp"
#include "bislat/rng.hpp"
#include "bislat/symmetric.hpp"

namespace bislat {

/// A grouping of target atoms under source atoms: target atom t belongs to
/// source atom group_of[t], and each group's masses sum exactly (in floating
/// point) to the source mass. Equimeasurable pairs across the two spaces are
/// built by copying values across groups.
struct Refinement {
    SpacePtr source;
    SpacePtr target;
    std::vector<std::size_t> group_of;
};

/// Split every atom into 2^k equal halves (k in {0,1,2}); halving keeps the
/// mass sums exact, so transferred vectors are equimeasurable exactly.
Refinement dyadic_refine(const SpacePtr& source, Rng& rng);

/// Recognize `target` as a consecutive grouping refinement of `source`
/// (exact mass sums). Needed to build equimeasurable pairs at desk scale.
std::optional<Refinement> match_refinement(const SpacePtr& source, const SpacePtr& target);

FunctionVector transfer_vector(const FunctionVector& x, const Refinement& ref);

/// Numeric verification that replanting preserves the lattice structure:
/// norms of corresponding vectors exactly, meet exactly, join and dual through
/// the solvers within tol, and inclusion-constant estimates across the two
/// spaces within the looser estimate tolerance.
LawReport check_transfer_isomorphism(const SymmetricSpace& E, const SymmetricSpace& F,
                                     const SpacePtr& target, const LawOptions& opts);

/// Linf c1 E c1 L1 on probability spaces for a norming symmetric space; a
/// failed norming precondition is reported as such, not as a chain failure.
LawReport check_inclusion_chain(const SymmetricSpace& S, const LawOptions& opts);

// Generator-driven suites.
LawReport run_transfer_suite(const LawOptions& opts);
LawReport run_chain_suite(const LawOptions& opts);

/// The profile catalog bound to a domain mass (Lp family, sup, the registry
/// Orlicz gauges, and two Lorentz weight ladders).
std::vector<ProfilePtr> catalog_profiles(double domain_mass);

}  // namespace bislat

#endif
