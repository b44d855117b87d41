#pragma once

#include <string>
#include <vector>

#include "qjackson/families.hpp"

namespace qjackson {

std::string echo_complex(Complex z);
std::string echo_vector(const std::vector<Complex>& v);
Complex sum_of(const std::vector<Complex>& v);
SumResult sum_with(const WeightForm& w, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);

}  // namespace qjackson
