#include "fqpb/serialization.hpp"

namespace fqpb {

namespace {

const char* kWedgeNames[] = {"", "1", "2", "12"};

template <class L>
nlohmann::json laurent_to_json(const L& a)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [d, c] : a.terms())
        out.push_back({d, to_string(c.re()), to_string(c.im())});
    return out;
}

template <class L>
L laurent_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array())
        throw ParseError(field + ": expected a list of [degree, re, im]");
    L out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& t = j[k];
        std::string f = field + "[" + std::to_string(k) + "]";
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
            throw ParseError(f + ": expected [degree, re, im]");
        out.add_term(t[0].get<int>(),
                     Scalar(rational_from_json(t[1], f + ".re"), rational_from_json(t[2], f + ".im")));
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const Scalar& s) { return {{"re", to_string(s.re())}, {"im", to_string(s.im())}}; }

nlohmann::json to_json(const BaseElem& a) { return laurent_to_json(a); }
nlohmann::json to_json(const GroupElem& a) { return laurent_to_json(a); }

nlohmann::json to_json(const BundleElem& b)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, f] : b.grades())
        out.push_back({m, to_json(f)});
    return out;
}

nlohmann::json to_json(const HorForm& w)
{
    nlohmann::json out = nlohmann::json::object();
    for (WedgeIndex I : kWedgeBasis)
        if (!w[I].is_zero())
            out[kWedgeNames[I]] = to_json(w[I]);
    return out;
}

nlohmann::json to_json(const HorTensorA& t)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, w] : t)
        out.push_back({k, to_json(w)});
    return out;
}

nlohmann::json to_json(const Vec& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : v)
        out.push_back(to_json(c));
    return out;
}

Rational rational_from_json(const nlohmann::json& j, const std::string& field)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(field + ": " + e.what());
    }
    throw ParseError(field + ": expected a rational string \"p/q\"");
}

BaseElem base_from_json(const nlohmann::json& j, const std::string& field)
{
    return laurent_from_json<BaseElem>(j, field);
}

GroupElem group_from_json(const nlohmann::json& j, const std::string& field)
{
    return laurent_from_json<GroupElem>(j, field);
}

BundleElem bundle_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array())
        throw ParseError(field + ": expected a list of [m, BaseElem]");
    BundleElem out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& t = j[k];
        std::string f = field + "[" + std::to_string(k) + "]";
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            throw ParseError(f + ": expected [m, BaseElem]");
        out.add(t[0].get<int>(), base_from_json(t[1], f + "[1]"));
    }
    return out;
}

HorForm hor_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_object())
        throw ParseError(field + ": expected an object keyed by \"\", \"1\", \"2\", \"12\"");
    HorForm out;
    for (const auto& [key, val] : j.items()) {
        int idx = -1;
        for (int I = 0; I < 4; ++I)
            if (key == kWedgeNames[I])
                idx = I;
        if (idx < 0)
            throw ParseError(field + ": unknown wedge key \"" + key + "\"");
        out[static_cast<WedgeIndex>(idx)] = bundle_from_json(val, field + "." + key);
    }
    return out;
}

}  // namespace fqpb
