#ifndef BISLAT_RESULT_HPP
#define BISLAT_RESULT_HPP

#include <optional>

#include "bislat/measure.hpp"

namespace bislat {

/// Outcome of a norm evaluation. `witness` carries a decomposition part (sum
/// norms) or a maximizer on the unit ball (dual norms) when one exists.
/// `tol` is the tolerance the value is believed to meet; closed forms report 0.
struct NormResult {
    double value = 0.0;
    std::optional<FunctionVector> witness;
    double tol = 0.0;
    bool converged = true;
};

}  // namespace bislat

#endif
