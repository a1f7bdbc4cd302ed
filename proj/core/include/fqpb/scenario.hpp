#pragma once

// Scenario files:
// {
//   "t": "2",
//   "alpha": [[1, "1", "0"]],
//   "window": 6,
//   "seed": 1,
//   "perturbations": [{"name": "...", "a": BundleElem, "b": BundleElem}]
// }

#include "fqpb/connections.hpp"
#include "fqpb/serialization.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fqpb {

struct NamedPerturbation {
    std::string name;
    Perturbation xi;
};

struct Scenario {
    Rational t;
    BaseElem alpha;
    int window = 6;
    std::uint64_t seed = 1;
    std::vector<NamedPerturbation> perturbations;
};

/// Throws ParseError naming the offending field.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

nlohmann::json to_json(const Scenario& s);

}  // namespace fqpb
