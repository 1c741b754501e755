#ifndef BISLAT_YOUNG_HPP
#define BISLAT_YOUNG_HPP

#include <string>
#include <vector>

namespace bislat {

/// A Young function M: convex, increasing, M(0)=0. Every registry entry is
/// normalized so that M(1)=1, which makes the Luxemburg gauge of an indicator
/// of measure 1 equal to 1 (the norming condition on probability spaces).
struct YoungFunction {
    std::string name;
    bool delta2;            // Delta_2 growth condition on finite measure
    double (*value)(double t);
    double (*derivative)(double t);
};

/// Known names: "t2" (t^2), "tlogt" (t log(1+t), normalized),
/// "exp" ((e^t - 1)/(e - 1), not Delta_2).
const YoungFunction* young_function(const std::string& name);

std::vector<std::string> young_function_names();

}  // namespace bislat

#endif
