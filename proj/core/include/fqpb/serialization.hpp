#pragma once

// JSON forms used by scenarios and reports. Rationals are strings "p/q".
//   Scalar     {"re": "p/q", "im": "p/q"}
//   BaseElem   [[degree, "re", "im"], ...]
//   GroupElem  [[m, "re", "im"], ...]
//   BundleElem [[m, BaseElem], ...]
//   HorForm    {"": BundleElem, "1": ..., "2": ..., "12": ...} (zero parts omitted)

#include "fqpb/horizontal.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace fqpb {

/// Malformed JSON input; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Scalar& s);
nlohmann::json to_json(const BaseElem& a);
nlohmann::json to_json(const GroupElem& a);
nlohmann::json to_json(const BundleElem& b);
nlohmann::json to_json(const HorForm& w);
nlohmann::json to_json(const HorTensorA& t);
nlohmann::json to_json(const Vec& v);

/// `field` is used in error messages.
Rational rational_from_json(const nlohmann::json& j, const std::string& field);
BaseElem base_from_json(const nlohmann::json& j, const std::string& field);
GroupElem group_from_json(const nlohmann::json& j, const std::string& field);
BundleElem bundle_from_json(const nlohmann::json& j, const std::string& field);
HorForm hor_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace fqpb
