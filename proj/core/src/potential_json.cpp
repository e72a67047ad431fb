#include "dirac/potential_json.hpp"

#include <json.hpp>

namespace dirac {

using nlohmann::json;

namespace {

json endpoint_to_json(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double endpoint_from_json(const json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw SpecError("interval endpoint: bad string '" + s + "'");
    }
    if (!j.is_number()) throw SpecError("interval endpoint: expected number or 'inf'/'-inf'");
    return j.get<double>();
}

const char* regularity_name(Regularity r) {
    switch (r) {
    case Regularity::l1loc: return "L1loc";
    case Regularity::l1loc_log: return "L1loc_log";
    case Regularity::smooth: return "smooth";
    }
    return "smooth";
}

Regularity regularity_from_name(const std::string& s) {
    if (s == "L1loc") return Regularity::l1loc;
    if (s == "L1loc_log") return Regularity::l1loc_log;
    if (s == "smooth") return Regularity::smooth;
    throw SpecError("unknown regularity tag '" + s + "'");
}

json coeff_to_json(const CoefficientFunction& c) {
    json j;
    switch (c.kind()) {
    case CoefficientFunction::Kind::zero: j["kind"] = "zero"; break;
    case CoefficientFunction::Kind::constant:
        j["kind"] = "const";
        j["value"] = c.const_value();
        break;
    case CoefficientFunction::Kind::expr:
        j["kind"] = "expr";
        j["expr"] = c.expr_text();
        break;
    case CoefficientFunction::Kind::table:
        j["kind"] = "table";
        j["x"] = c.table_x();
        j["v"] = c.table_v();
        break;
    case CoefficientFunction::Kind::custom:
        throw SpecError("cannot serialize a closure-backed coefficient");
    }
    j["regularity"] = regularity_name(c.regularity());
    return j;
}

CoefficientFunction coeff_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw SpecError("coefficient: expected object with 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    CoefficientFunction c;
    if (kind == "zero") {
        c = CoefficientFunction::zero();
    } else if (kind == "const") {
        c = CoefficientFunction::constant(j.at("value").get<double>());
    } else if (kind == "expr") {
        c = CoefficientFunction::expression(j.at("expr").get<std::string>());
    } else if (kind == "table") {
        c = CoefficientFunction::table(j.at("x").get<std::vector<double>>(),
                                       j.at("v").get<std::vector<double>>());
    } else {
        throw SpecError("coefficient: unknown kind '" + kind + "'");
    }
    if (j.contains("regularity"))
        c.set_regularity(regularity_from_name(j.at("regularity").get<std::string>()));
    return c;
}

} // namespace

std::string potential_to_json(const DiracPotential& pot, int indent) {
    json j;
    j["interval"] = json::array({endpoint_to_json(pot.interval.a), endpoint_to_json(pot.interval.b)});
    j["m"] = pot.m;
    j["q_sc"] = coeff_to_json(pot.q_sc);
    j["q_el"] = coeff_to_json(pot.q_el);
    j["q_am"] = coeff_to_json(pot.q_am);
    return j.dump(indent);
}

DiracPotential potential_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("potential JSON parse error: ") + e.what());
    }
    try {
        if (!j.contains("interval") || !j["interval"].is_array() || j["interval"].size() != 2)
            throw SpecError("potential: 'interval' must be [a,b]");
        Interval iv(endpoint_from_json(j["interval"][0]), endpoint_from_json(j["interval"][1]));
        double m = j.value("m", 0.0);
        auto coeff = [&j](const char* key) {
            return j.contains(key) ? coeff_from_json(j.at(key)) : CoefficientFunction::zero();
        };
        return DiracPotential(iv, m, coeff("q_sc"), coeff("q_el"), coeff("q_am"));
    } catch (const json::exception& e) {
        throw SpecError(std::string("potential JSON: ") + e.what());
    }
}

} // namespace dirac
