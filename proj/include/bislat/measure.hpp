#ifndef BISLAT_MEASURE_HPP
#define BISLAT_MEASURE_HPP

#include <cstddef>
#include <memory>
#include <vector>

namespace bislat {

enum class MeasureKind { probability, finite, counting };

/// A finite atomic measure space: a list of strictly positive atom masses.
/// Probability spaces must have total mass 1 (within 1e-12); counting spaces
/// must have every mass exactly 1. Immutable after construction.
class MeasureSpace {
public:
    static std::shared_ptr<const MeasureSpace> make(std::vector<double> masses,
                                                    MeasureKind kind);

    std::size_t atom_count() const { return masses_.size(); }
    double mass(std::size_t i) const { return masses_[i]; }
    const std::vector<double>& masses() const { return masses_; }
    double total_mass() const { return total_; }
    MeasureKind kind() const { return kind_; }

private:
    MeasureSpace(std::vector<double> masses, MeasureKind kind, double total)
        : masses_(std::move(masses)), kind_(kind), total_(total) {}

    std::vector<double> masses_;
    MeasureKind kind_;
    double total_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

SpacePtr make_space(std::vector<double> masses, MeasureKind kind);

/// True when both vectors can be paired pointwise: same object, or atom-for-atom
/// identical masses and kind.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// A measurable function at desk scale: one real value per atom.
struct FunctionVector {
    std::vector<double> values;
    SpacePtr space;

    std::size_t dim() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    bool is_zero() const;
};

FunctionVector make_vector(SpacePtr space, std::vector<double> values);
FunctionVector indicator(const SpacePtr& space, const std::vector<std::size_t>& atoms);

double pairing(const FunctionVector& f, const FunctionVector& x);  // sum mu_i f_i x_i
FunctionVector fv_abs(const FunctionVector& x);
FunctionVector fv_add(const FunctionVector& a, const FunctionVector& b);
FunctionVector fv_sub(const FunctionVector& a, const FunctionVector& b);
FunctionVector fv_scale(double c, const FunctionVector& x);

/// A non-increasing step function on [0, total mass), stored as levels with
/// their interval widths. Breakpoints are derived; comparisons and quadrature
/// work on (levels, widths) so that merged ties stay exact in floating point.
struct StepFunction {
    std::vector<double> levels;   // non-increasing, one per interval
    std::vector<double> widths;   // positive, same length

    double total_width() const;
    std::vector<double> breakpoints() const;  // 0, w0, w0+w1, ...
    bool operator==(const StepFunction& other) const;
};

/// mes({ atoms : x_i > s }) -- non-increasing and right-continuous in s.
double distribution_function(const FunctionVector& x, double s);

/// Non-increasing rearrangement of |x|: values sorted descending, widths the
/// corresponding atom masses, equal adjacent levels merged.
StepFunction rearrangement(const FunctionVector& x);

/// True iff |x| and |y| have identical rearrangements (exact comparison after
/// tie merging). Requires equal total mass.
bool equimeasurable(const FunctionVector& x, const FunctionVector& y);

}  // namespace bislat

#endif
