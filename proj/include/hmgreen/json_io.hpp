#ifndef HMGREEN_JSON_IO_HPP
#define HMGREEN_JSON_IO_HPP

// JSON wire forms: field elements {"p","q","r"}, ideals {"basis": [[p,q,r],..]}
// with the named shortcuts OK/diff/diffinv, lattice vectors, Green values.

#include "hmgreen/green.hpp"

#include <json.hpp>

namespace hmgreen {

using Json = nlohmann::json;

Json field_element_to_json(const FieldElement& x);
FieldElement field_element_from_json(long D, const Json& j);

// "OK", "diff", "diffinv", or an inline JSON object {"basis": [[p,q,r],[p,q,r]]}
FractionalIdeal ideal_from_spec(long D, const std::string& spec);
Json ideal_to_json(const FractionalIdeal& a);

Json lattice_vector_to_json(const LatticeVector& A);
Json green_value_to_json(const GreenValue& v);

// "x1,y1,x2,y2"
EvalPoint eval_point_from_string(const std::string& s);

} // namespace hmgreen

#endif
