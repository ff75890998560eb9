#include "hmgreen/json_io.hpp"

#include <sstream>

namespace hmgreen {

namespace {

long long json_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw std::invalid_argument(std::string("expected integer field '") + key + "'");
    return j[key].get<long long>();
}

} // namespace

Json field_element_to_json(const FieldElement& x) {
    if (!fits_long(x.p()) || !fits_long(x.q()) || !fits_long(x.r()))
        throw std::invalid_argument("field element too large for the wire form");
    return Json{{"p", x.p().convert_to<long long>()},
                {"q", x.q().convert_to<long long>()},
                {"r", x.r().convert_to<long long>()}};
}

FieldElement field_element_from_json(long D, const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("field element must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "p" && it.key() != "q" && it.key() != "r")
            throw std::invalid_argument("unknown key in field element: " + it.key());
    long long r = j.contains("r") ? json_int(j, "r") : 1;
    return FieldElement(D, Int(json_int(j, "p")), Int(json_int(j, "q")), Int(r));
}

FractionalIdeal ideal_from_spec(long D, const std::string& spec) {
    if (spec.empty() || spec == "OK") return FractionalIdeal::ring_of_integers(D);
    if (spec == "diff") return FractionalIdeal::different(D);
    if (spec == "diffinv") return FractionalIdeal::different_inv(D);
    Json j = Json::parse(spec, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("basis"))
        throw std::invalid_argument("ideal spec must be OK, diff, diffinv or {\"basis\": ...}");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "basis")
            throw std::invalid_argument("unknown key in ideal spec: " + it.key());
    const Json& b = j["basis"];
    if (!b.is_array() || b.size() != 2)
        throw std::invalid_argument("ideal basis must be a pair");
    std::vector<FieldElement> gens;
    for (const Json& e : b) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("basis entries are [p, q, r] triples");
        gens.push_back(FieldElement(D, Int(e[0].get<long long>()),
                                    Int(e[1].get<long long>()), Int(e[2].get<long long>())));
    }
    return FractionalIdeal::from_generators(D, gens);
}

Json ideal_to_json(const FractionalIdeal& a) {
    auto b = a.basis();
    Json basis = Json::array();
    for (const auto& x : b) {
        Json t = field_element_to_json(x);
        basis.push_back(Json::array({t["p"], t["q"], t["r"]}));
    }
    return Json{{"basis", basis}, {"norm", rat_string(a.norm())}};
}

Json lattice_vector_to_json(const LatticeVector& A) {
    return Json{{"a", rat_string(A.a)}, {"b", rat_string(A.b)},
                {"lam", field_element_to_json(A.lam)}};
}

Json green_value_to_json(const GreenValue& v) {
    Json parts = Json::object();
    for (const auto& [k, val] : v.parts) parts[k] = val;
    return Json{{"value", v.value}, {"tail_bound", v.tail_bound}, {"parts", parts},
                {"precision", "double"}};
}

EvalPoint eval_point_from_string(const std::string& s) {
    std::istringstream is(s);
    double v[4];
    char comma;
    for (int i = 0; i < 4; ++i) {
        if (i && !(is >> comma && comma == ','))
            throw std::invalid_argument("evaluation point format is x1,y1,x2,y2");
        if (!(is >> v[i])) throw std::invalid_argument("evaluation point format is x1,y1,x2,y2");
    }
    return EvalPoint({v[0], v[1]}, {v[2], v[3]});
}

} // namespace hmgreen
