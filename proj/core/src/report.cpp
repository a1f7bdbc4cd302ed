#include "fqpb/report.hpp"

#include <algorithm>
#include <iomanip>

namespace fqpb {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass:
        return "PASS";
    case Status::Fail:
        return "FAIL";
    case Status::Vacuous:
        return "VACUOUS";
    case Status::Unsupported:
        return "UNSUPPORTED";
    }
    return "?";
}

Check make_check(std::string id, std::string anchor, bool ok, std::string detail,
                 nlohmann::json witness)
{
    Check c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.status = ok ? Status::Pass : Status::Fail;
    c.detail = std::move(detail);
    c.witness = std::move(witness);
    return c;
}

bool Report::all_ok() const
{
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) {
        return c.status == Status::Fail || c.status == Status::Unsupported;
    });
}

std::size_t Report::count(Status s) const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

nlohmann::json to_json(const Report& r, bool with_timing)
{
    nlohmann::json j;
    j["command"] = r.command;
    if (r.seed)
        j["seed"] = *r.seed;
    j["info"] = r.info;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json e;
        e["id"] = c.id;
        e["anchor"] = c.anchor;
        e["status"] = to_string(c.status);
        e["detail"] = c.detail;
        e["witness"] = c.witness;
        if (with_timing && c.seconds)
            e["seconds"] = *c.seconds;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"pass", r.count(Status::Pass)},
                    {"fail", r.count(Status::Fail)},
                    {"vacuous", r.count(Status::Vacuous)},
                    {"unsupported", r.count(Status::Unsupported)}};
    return j;
}

void render_json(std::ostream& os, const Report& r, bool with_timing)
{
    os << to_json(r, with_timing).dump(2) << "\n";
}

void render_text(std::ostream& os, const Report& r, bool with_timing)
{
    os << "command: " << r.command << "\n";
    if (r.seed)
        os << "seed: " << *r.seed << "\n";
    for (const auto& [k, v] : r.info.items())
        os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    std::size_t width = 2;
    for (const auto& c : r.checks)
        width = std::max(width, c.id.size());
    for (const auto& c : r.checks) {
        os << std::left << std::setw(12) << ("[" + to_string(c.status) + "]") << std::setw(width + 2)
           << c.id << c.anchor;
        if (with_timing && c.seconds)
            os << "  (" << *c.seconds << " s)";
        os << "\n";
        if (!c.detail.empty())
            os << "    " << c.detail << "\n";
        if (!c.witness.is_null())
            os << "    witness: " << c.witness.dump() << "\n";
    }
    os << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
       << r.count(Status::Vacuous) << " vacuous, " << r.count(Status::Unsupported)
       << " unsupported\n";
}

}  // namespace fqpb
