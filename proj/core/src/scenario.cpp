#include "fqpb/scenario.hpp"

#include <fstream>
#include <set>

namespace fqpb {

Scenario parse_scenario(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ParseError("scenario: expected a JSON object");
    Scenario s;
    if (!j.contains("t"))
        throw ParseError("t: missing");
    s.t = rational_from_json(j.at("t"), "t");
    if (s.t == 0 || s.t == 1 || s.t == -1)
        throw ParseError("t: must not be 0, 1 or -1");
    if (!j.contains("alpha"))
        throw ParseError("alpha: missing");
    s.alpha = base_from_json(j.at("alpha"), "alpha");
    if (s.alpha.is_zero())
        throw ParseError("alpha: must be nonzero");
    if (j.contains("window")) {
        if (!j.at("window").is_number_integer())
            throw ParseError("window: expected an integer");
        s.window = j.at("window").get<int>();
    }
    if (s.window < 2)
        throw ParseError("window: must be >= 2");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw ParseError("seed: expected a nonnegative integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("perturbations")) {
        const auto& ps = j.at("perturbations");
        if (!ps.is_array())
            throw ParseError("perturbations: expected a list");
        std::set<std::string> names{"nabla"};
        for (std::size_t k = 0; k < ps.size(); ++k) {
            std::string f = "perturbations[" + std::to_string(k) + "]";
            const auto& p = ps[k];
            if (!p.is_object() || !p.contains("name") || !p.at("name").is_string())
                throw ParseError(f + ".name: missing or not a string");
            NamedPerturbation np;
            np.name = p.at("name").get<std::string>();
            if (!names.insert(np.name).second)
                throw ParseError(f + ".name: duplicate or reserved name \"" + np.name + "\"");
            if (p.contains("a"))
                np.xi.a = bundle_from_json(p.at("a"), f + ".a");
            if (p.contains("b"))
                np.xi.b = bundle_from_json(p.at("b"), f + ".b");
            if (!np.xi.a.is_homogeneous(1))
                throw ParseError(f + ".a: must have F-weight +1");
            if (!np.xi.b.is_homogeneous(-1))
                throw ParseError(f + ".b: must have F-weight -1");
            s.perturbations.push_back(std::move(np));
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("scenario: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario: malformed JSON: ") + e.what());
    }
    return parse_scenario(j);
}

nlohmann::json to_json(const Scenario& s)
{
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : s.perturbations)
        ps.push_back({{"name", p.name}, {"a", to_json(p.xi.a)}, {"b", to_json(p.xi.b)}});
    return {{"t", to_string(s.t)},
            {"alpha", to_json(s.alpha)},
            {"window", s.window},
            {"seed", s.seed},
            {"perturbations", ps}};
}

}  // namespace fqpb
