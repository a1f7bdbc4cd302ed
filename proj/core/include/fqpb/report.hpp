#pragma once

// Check results and their text/JSON rendering.

#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fqpb {

enum class Status { Pass, Fail, Vacuous, Unsupported };

std::string to_string(Status s);

struct Check {
    std::string id;
    /// The identity being checked, as a formula with a short label.
    std::string anchor;
    Status status = Status::Pass;
    std::string detail;
    /// Serialized counterexample or supporting data.
    nlohmann::json witness;
    std::optional<double> seconds;
};

Check make_check(std::string id, std::string anchor, bool ok, std::string detail = {},
                 nlohmann::json witness = nullptr);

struct Report {
    std::string command;
    std::optional<unsigned long long> seed;
    nlohmann::json info = nlohmann::json::object();
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void append(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
    /// True unless some check is FAIL or UNSUPPORTED.
    bool all_ok() const;
    std::size_t count(Status s) const;
};

nlohmann::json to_json(const Report& r, bool with_timing = false);
void render_json(std::ostream& os, const Report& r, bool with_timing = false);
void render_text(std::ostream& os, const Report& r, bool with_timing = false);

}  // namespace fqpb
