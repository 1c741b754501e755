#include "bislat/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bislat {

namespace {
constexpr double kProbabilityTol = 1e-12;
}

std::shared_ptr<const MeasureSpace> MeasureSpace::make(std::vector<double> masses,
                                                       MeasureKind kind) {
    if (masses.empty()) {
        throw std::invalid_argument("measure space needs at least one atom");
    }
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) {
            throw std::invalid_argument("atom mass must be positive and finite (atom " +
                                        std::to_string(i) + ")");
        }
        if (kind == MeasureKind::counting && masses[i] != 1.0) {
            throw std::invalid_argument("counting space requires every mass = 1 (atom " +
                                        std::to_string(i) + ")");
        }
    }
    double total = std::accumulate(masses.begin(), masses.end(), 0.0);
    if (kind == MeasureKind::probability && std::abs(total - 1.0) > kProbabilityTol) {
        throw std::invalid_argument("probability space requires total mass 1, got " +
                                    std::to_string(total));
    }
    return std::shared_ptr<const MeasureSpace>(
        new MeasureSpace(std::move(masses), kind, total));
}

SpacePtr make_space(std::vector<double> masses, MeasureKind kind) {
    return MeasureSpace::make(std::move(masses), kind);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (!a || !b) return false;
    if (a == b) return true;
    return a->kind() == b->kind() && a->masses() == b->masses();
}

bool FunctionVector::is_zero() const {
    for (double v : values) {
        if (v != 0.0) return false;
    }
    return true;
}

FunctionVector make_vector(SpacePtr space, std::vector<double> values) {
    if (!space) throw std::invalid_argument("function vector needs a measure space");
    if (values.size() != space->atom_count()) {
        throw std::invalid_argument("function vector needs one value per atom: got " +
                                    std::to_string(values.size()) + " for " +
                                    std::to_string(space->atom_count()) + " atoms");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("function values must be finite");
    }
    return FunctionVector{std::move(values), std::move(space)};
}

FunctionVector indicator(const SpacePtr& space, const std::vector<std::size_t>& atoms) {
    if (!space) throw std::invalid_argument("indicator needs a measure space");
    std::vector<double> values(space->atom_count(), 0.0);
    for (std::size_t i : atoms) {
        if (i >= space->atom_count()) {
            throw std::invalid_argument("indicator atom index out of range: " +
                                        std::to_string(i));
        }
        values[i] = 1.0;
    }
    return FunctionVector{std::move(values), space};
}

double pairing(const FunctionVector& f, const FunctionVector& x) {
    if (!same_space(f.space, x.space)) {
        throw std::invalid_argument("pairing requires a shared measure space");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        s += f.space->mass(i) * f.values[i] * x.values[i];
    }
    return s;
}

FunctionVector fv_abs(const FunctionVector& x) {
    FunctionVector r = x;
    for (double& v : r.values) v = std::abs(v);
    return r;
}

FunctionVector fv_add(const FunctionVector& a, const FunctionVector& b) {
    if (!same_space(a.space, b.space)) {
        throw std::invalid_argument("vector addition requires a shared measure space");
    }
    FunctionVector r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
}

FunctionVector fv_sub(const FunctionVector& a, const FunctionVector& b) {
    if (!same_space(a.space, b.space)) {
        throw std::invalid_argument("vector subtraction requires a shared measure space");
    }
    FunctionVector r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

FunctionVector fv_scale(double c, const FunctionVector& x) {
    FunctionVector r = x;
    for (double& v : r.values) v *= c;
    return r;
}

double StepFunction::total_width() const {
    return std::accumulate(widths.begin(), widths.end(), 0.0);
}

std::vector<double> StepFunction::breakpoints() const {
    std::vector<double> b;
    b.reserve(widths.size() + 1);
    double t = 0.0;
    b.push_back(0.0);
    for (double w : widths) {
        t += w;
        b.push_back(t);
    }
    return b;
}

bool StepFunction::operator==(const StepFunction& other) const {
    return levels == other.levels && widths == other.widths;
}

double distribution_function(const FunctionVector& x, double s) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x.values[i] > s) m += x.space->mass(i);
    }
    return m;
}

StepFunction rearrangement(const FunctionVector& x) {
    const std::size_t n = x.dim();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(x.values[i]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });

    StepFunction sf;
    for (std::size_t k = 0; k < n; ++k) {
        double level = a[order[k]];
        double w = x.space->mass(order[k]);
        if (!sf.levels.empty() && sf.levels.back() == level) {
            sf.widths.back() += w;
        } else {
            sf.levels.push_back(level);
            sf.widths.push_back(w);
        }
    }
    return sf;
}

bool equimeasurable(const FunctionVector& x, const FunctionVector& y) {
    double tx = x.space->total_mass();
    double ty = y.space->total_mass();
    if (std::abs(tx - ty) > 1e-12 * std::max(1.0, std::max(tx, ty))) {
        throw std::invalid_argument("equimeasurable requires equal total mass");
    }
    return rearrangement(x) == rearrangement(y);
}

}  // namespace bislat
