#include "bislat/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bislat {

namespace {

double quadrature_pow(const StepFunction& s, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        acc += std::pow(s.levels[i], p) * s.widths[i];
    }
    return acc;
}

double orlicz_modular(const StepFunction& s, const YoungFunction* young, double lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        if (s.levels[i] > 0.0) acc += young->value(s.levels[i] / lambda) * s.widths[i];
    }
    return acc;
}

// inf { lambda > 0 : modular(s / lambda) <= 1 }, by bisection.
double luxemburg_gauge(const StepFunction& s, const YoungFunction* young) {
    double top = 0.0;
    for (double l : s.levels) top = std::max(top, l);
    if (top == 0.0) return 0.0;

    double hi = top;
    while (orlicz_modular(s, young, hi) > 1.0) hi *= 2.0;
    double lo = hi;
    while (orlicz_modular(s, young, lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (orlicz_modular(s, young, mid) <= 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// Integral of s against the k-cell step weight w on [0, domain); exact sweep
// over the overlap intervals of the two step functions.
double lorentz_integral(const StepFunction& s, const std::vector<double>& w,
                        double domain) {
    const double cell = domain / static_cast<double>(w.size());
    double acc = 0.0;
    double t = 0.0;
    std::size_t j = 0;  // current weight cell
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        double remaining = s.widths[i];
        while (remaining > 0.0 && j < w.size()) {
            double cell_end = cell * static_cast<double>(j + 1);
            double avail = cell_end - t;
            if (avail <= 0.0) {
                ++j;
                continue;
            }
            double step = std::min(remaining, avail);
            acc += s.levels[i] * w[j] * step;
            t += step;
            remaining -= step;
            if (t >= cell_end) ++j;
        }
    }
    return acc;
}

ProfilePtr finish(SymmetricProfile pr) {
    return std::make_shared<const SymmetricProfile>(std::move(pr));
}

}  // namespace

double SymmetricProfile::evaluate(const StepFunction& s) const {
    switch (family) {
        case ProfileFamily::lp:
            if (std::isinf(p)) return s.levels.empty() ? 0.0 : s.levels.front();
            return std::pow(quadrature_pow(s, p), 1.0 / p);
        case ProfileFamily::sup:
            return s.levels.empty() ? 0.0 : s.levels.front();
        case ProfileFamily::orlicz:
            return luxemburg_gauge(s, young);
        case ProfileFamily::lorentz:
            return lorentz_integral(s, weights, domain_mass);
    }
    throw std::logic_error("unreachable profile family");
}

ProfilePtr profile_lp(double p, double domain_mass) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp profile needs p >= 1");
    if (!(domain_mass > 0.0)) throw std::invalid_argument("profile domain mass must be positive");
    SymmetricProfile pr;
    pr.family = ProfileFamily::lp;
    pr.p = p;
    pr.domain_mass = domain_mass;
    pr.norming = domain_mass >= 1.0;
    pr.id = std::isinf(p) ? "sym.Lp(inf)" : "sym.Lp(" + std::to_string(p) + ")";
    return finish(std::move(pr));
}

ProfilePtr profile_sup(double domain_mass) {
    if (!(domain_mass > 0.0)) throw std::invalid_argument("profile domain mass must be positive");
    SymmetricProfile pr;
    pr.family = ProfileFamily::sup;
    pr.domain_mass = domain_mass;
    pr.norming = domain_mass >= 1.0;
    pr.id = "sym.sup";
    return finish(std::move(pr));
}

ProfilePtr profile_orlicz(const std::string& young_name, double domain_mass) {
    if (!(domain_mass > 0.0)) throw std::invalid_argument("profile domain mass must be positive");
    SymmetricProfile pr;
    pr.family = ProfileFamily::orlicz;
    pr.young = young_function(young_name);
    pr.domain_mass = domain_mass;
    pr.norming = domain_mass >= 1.0;  // registry Young functions have M(1)=1
    pr.id = "sym.orlicz(" + young_name + ")";
    return finish(std::move(pr));
}

ProfilePtr profile_lorentz(std::vector<double> weights, double domain_mass) {
    if (weights.empty()) throw std::invalid_argument("lorentz profile needs weights");
    if (!(domain_mass > 0.0)) throw std::invalid_argument("profile domain mass must be positive");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0)) throw std::invalid_argument("lorentz weights must be nonnegative");
        if (i > 0 && weights[i] > weights[i - 1]) {
            throw std::invalid_argument("lorentz weights must be non-increasing");
        }
    }
    if (!(weights.front() > 0.0)) throw std::invalid_argument("lorentz needs a positive leading weight");

    // Normalize so the weight integrates to 1 over [0,1): indicator of a set
    // of measure 1 then has norm 1.
    const double cell = domain_mass / static_cast<double>(weights.size());
    double integral_01 = 0.0;
    double t = 0.0;
    for (double w : weights) {
        if (t >= 1.0) break;
        integral_01 += w * std::min(cell, 1.0 - t);
        t += cell;
    }
    if (integral_01 > 0.0) {
        for (double& w : weights) w /= integral_01;
    }

    SymmetricProfile pr;
    pr.family = ProfileFamily::lorentz;
    pr.weights = std::move(weights);
    pr.domain_mass = domain_mass;
    pr.norming = domain_mass >= 1.0 && integral_01 > 0.0;
    pr.id = "sym.lorentz";
    return finish(std::move(pr));
}

ProfilePtr profile_with_domain(const ProfilePtr& profile, double domain_mass) {
    if (!profile) throw std::invalid_argument("null profile");
    switch (profile->family) {
        case ProfileFamily::lp:
            return profile_lp(profile->p, domain_mass);
        case ProfileFamily::sup:
            return profile_sup(domain_mass);
        case ProfileFamily::orlicz:
            return profile_orlicz(profile->young->name, domain_mass);
        case ProfileFamily::lorentz:
            return profile_lorentz(profile->weights, domain_mass);
    }
    throw std::logic_error("unreachable profile family");
}

SymmetricSpace make_symmetric_space(ProfilePtr profile, SpacePtr space) {
    if (!profile || !space) throw std::invalid_argument("symmetric space needs profile and space");
    if (std::abs(space->total_mass() - profile->domain_mass) >
        1e-12 * std::max(1.0, profile->domain_mass)) {
        throw std::invalid_argument("space total mass does not match profile domain");
    }
    return SymmetricSpace{std::move(profile), std::move(space)};
}

NormResult symmetric_norm(const SymmetricSpace& s, const FunctionVector& x) {
    if (!same_space(s.space, x.space)) {
        throw std::invalid_argument("symmetric_norm: vector lives on a different space");
    }
    NormResult r;
    r.value = s.profile->evaluate(rearrangement(x));
    r.tol = 0.0;
    r.converged = true;
    return r;
}

SymmetricSpace mekler_transfer(const SymmetricSpace& s, const SpacePtr& target) {
    if (!target) throw std::invalid_argument("mekler_transfer needs a target space");
    double a = s.space->total_mass();
    double b = target->total_mass();
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::max(a, b))) {
        throw std::invalid_argument("mekler_transfer requires equal total mass");
    }
    return SymmetricSpace{s.profile, target};
}

}  // namespace bislat
