#include "bislat/young.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bislat {

namespace {

double young_t2(double t) { return t * t; }
double young_t2_d(double t) { return 2.0 * t; }

double young_tlogt(double t) { return t * std::log1p(t) / std::log(2.0); }
double young_tlogt_d(double t) { return (std::log1p(t) + t / (1.0 + t)) / std::log(2.0); }

double young_exp(double t) { return std::expm1(t) / std::expm1(1.0); }
double young_exp_d(double t) { return std::exp(t) / std::expm1(1.0); }

const std::array<YoungFunction, 3> kRegistry = {{
    {"t2", true, &young_t2, &young_t2_d},
    {"tlogt", true, &young_tlogt, &young_tlogt_d},
    {"exp", false, &young_exp, &young_exp_d},
}};

}  // namespace

const YoungFunction* young_function(const std::string& name) {
    for (const auto& y : kRegistry) {
        if (y.name == name) return &y;
    }
    throw std::invalid_argument("unknown Young function: " + name);
}

std::vector<std::string> young_function_names() {
    std::vector<std::string> names;
    for (const auto& y : kRegistry) names.push_back(y.name);
    return names;
}

}  // namespace bislat
