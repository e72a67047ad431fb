#ifndef DIRAC_POTENTIAL_JSON_HPP
#define DIRAC_POTENTIAL_JSON_HPP

#include <string>

#include "dirac/operator_model.hpp"

namespace dirac {

// Potentials serialize as
//   {"interval":[a,b], "m":0.5,
//    "q_sc":{"kind":"zero"},
//    "q_el":{"kind":"const","value":1.5},
//    "q_am":{"kind":"expr","expr":"sin(x)/x"}}
// with "table" coefficients carrying "x":[...], "v":[...]. Infinite
// endpoints are the strings "inf"/"-inf". Missing coefficient keys mean
// zero. Custom (closure-backed) coefficients cannot be serialized.

std::string potential_to_json(const DiracPotential& pot, int indent = -1);
DiracPotential potential_from_json(const std::string& text);

} // namespace dirac

#endif
