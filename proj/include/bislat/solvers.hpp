#ifndef BISLAT_SOLVERS_HPP
#define BISLAT_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace bislat {

struct SolveOptions {
    double tol = 1e-6;       // relative value tolerance
    long budget = 100000;    // objective evaluations
    std::uint64_t seed = 0x2545f4914f6cdd1dULL;
};

struct LinePoint {
    double x;
    double value;
};

/// Golden-section minimization of a unimodal function on [a, b]. Returns the
/// best evaluated point; `evals` is incremented per function call.
LinePoint golden_section_min(const std::function<double(double)>& f, double a,
                             double b, double xtol, long& evals);

struct BoxMinResult {
    std::vector<double> point;
    double value = 0.0;
    long evals = 0;
    bool converged = false;
};

/// Minimize a convex (possibly nonsmooth) function over the box
/// [lower, upper]^n: best start, cyclic coordinate line searches, then
/// random-direction polishing until improvements fall below the tolerance.
BoxMinResult minimize_convex_box(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const std::vector<std::vector<double>>& starts, const SolveOptions& opts);

/// Ellipsoid refinement for convex nonsmooth objectives on a box, driven by
/// (value, subgradient) evaluations. Cutting planes are immune to the ridge
/// geometry that stalls coordinate searches. `warm` seeds the incumbent; the
/// returned value never exceeds it.
struct SubgradFn {
    std::function<double(const std::vector<double>&, std::vector<double>&)> eval;
};

/// Optional extra feasibility oracle: return true and fill `normal` with an
/// outer normal of a violated constraint at z (the cut g.z <= g.z0).
using FeasCutFn = std::function<bool(const std::vector<double>&, std::vector<double>&)>;

BoxMinResult ellipsoid_box_min(const SubgradFn& f, const std::vector<double>& lower,
                               const std::vector<double>& upper,
                               const std::vector<double>& warm_point, double warm_value,
                               const SolveOptions& opts, const FeasCutFn& feas = {});

struct AscentResult {
    std::vector<double> point;
    double value = 0.0;
    long evals = 0;
    bool converged = false;
};

/// Maximize <c, x> over the unit ball {x >= 0 : gauge(x) <= 1} of a monotone,
/// positively homogeneous gauge, with c >= 0. Any local maximum of a linear
/// functional on the gauge sphere is global, so gauge-normalized ascent with
/// shrinking steps plus coordinate moves converges; every accepted point is a
/// feasible certificate, so the returned value is a lower bound on the sup.
AscentResult maximize_linear_on_ball(
    const std::vector<double>& c,
    const std::function<double(const std::vector<double>&)>& gauge,
    const std::vector<std::vector<double>>& starts, const SolveOptions& opts);

}  // namespace bislat

#endif
