#ifndef BISLAT_SYMMETRIC_HPP
#define BISLAT_SYMMETRIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "bislat/measure.hpp"
#include "bislat/result.hpp"
#include "bislat/young.hpp"

namespace bislat {

enum class ProfileFamily { lp, sup, orlicz, lorentz };

/// A rearrangement-invariant norm given as a functional on non-increasing step
/// functions over [0, domain_mass). Families:
///   lp       (integral of (x*)^p)^(1/p), quadrature exact on step functions
///   sup      top level of x*
///   orlicz   Luxemburg gauge of the quadrature modular
///   lorentz  integral of x* against a decreasing step weight on k equal cells
/// Lorentz weights are normalized at construction so the weight integrates to 1
/// over [0,1), which gives the norming condition on sets of measure 1.
struct SymmetricProfile {
    std::string id;
    ProfileFamily family;
    double p = 2.0;                      // lp
    const YoungFunction* young = nullptr;  // orlicz
    std::vector<double> weights;         // lorentz, one per equal-width cell
    double domain_mass = 1.0;
    bool norming = false;                // profile(1 on [0,1)) == 1 declared

    double evaluate(const StepFunction& s) const;
};

using ProfilePtr = std::shared_ptr<const SymmetricProfile>;

ProfilePtr profile_lp(double p, double domain_mass = 1.0);
ProfilePtr profile_sup(double domain_mass = 1.0);
ProfilePtr profile_orlicz(const std::string& young_name, double domain_mass = 1.0);
ProfilePtr profile_lorentz(std::vector<double> weights, double domain_mass = 1.0);

/// Rebind a profile to a different domain mass (same functional family).
ProfilePtr profile_with_domain(const ProfilePtr& profile, double domain_mass);

/// A symmetric space: a profile applied to rearrangements of vectors on a
/// fixed measure space. Requires the space total mass to match the profile
/// domain.
struct SymmetricSpace {
    ProfilePtr profile;
    SpacePtr space;
};

SymmetricSpace make_symmetric_space(ProfilePtr profile, SpacePtr space);

/// profile(rearrangement(x)); exactly equal for equimeasurable inputs.
NormResult symmetric_norm(const SymmetricSpace& s, const FunctionVector& x);

/// Replant the space onto a target measure space of the same total mass. The
/// profile is unchanged, so norms of matching rearrangements are preserved
/// exactly.
SymmetricSpace mekler_transfer(const SymmetricSpace& s, const SpacePtr& target);

}  // namespace bislat

#endif
