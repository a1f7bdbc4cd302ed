#include "fqpb/suites.hpp"

#include <doctest.h>

#include <sstream>

using namespace fqpb;

namespace {

nlohmann::json base_scenario()
{
    return nlohmann::json::parse(R"({"t": "2", "alpha": [[1, "1", "0"]], "window": 6, "seed": 1})");
}

std::string parse_error(const nlohmann::json& j)
{
    try {
        parse_scenario(j);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("scenario errors name the field")
{
    auto j = base_scenario();
    j["t"] = "1";
    CHECK(parse_error(j).rfind("t:", 0) == 0);
    j = base_scenario();
    j["alpha"] = nlohmann::json::array();
    CHECK(parse_error(j).rfind("alpha:", 0) == 0);
    j = base_scenario();
    j["window"] = 1;
    CHECK(parse_error(j).rfind("window:", 0) == 0);
    j = base_scenario();
    j["perturbations"] = nlohmann::json::parse(R"([{"name": "nabla", "a": [], "b": []}])");
    CHECK(parse_error(j).rfind("perturbations[0].name:", 0) == 0);
    j = base_scenario();
    j["perturbations"] = nlohmann::json::parse(R"([{"name": "p", "a": [[2, [[0, "1", "0"]]]], "b": []}])");
    CHECK(parse_error(j).rfind("perturbations[0].a:", 0) == 0);
    CHECK(parse_error(base_scenario()).empty());
}

TEST_CASE("scenario round trip")
{
    auto j = base_scenario();
    j["perturbations"] = nlohmann::json::parse(R"([{"name": "p", "a": [[1, [[0, "1", "0"]]]], "b": []}])");
    Scenario s = parse_scenario(j);
    Scenario r = parse_scenario(to_json(s));
    CHECK(r.t == s.t);
    CHECK(r.alpha == s.alpha);
    REQUIRE(r.perturbations.size() == 1);
    CHECK(r.perturbations[0].xi.a == s.perturbations[0].xi.a);
}

TEST_CASE("verify on the unperturbed model is green and reproducible")
{
    Session s = make_session(parse_scenario(base_scenario()));
    Report a = run_verify(s, 7);
    Report b = run_verify(s, 7);
    CHECK(a.all_ok());
    CHECK(a.count(Status::Fail) == 0);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_json(a).at("seed") == 7);
}

TEST_CASE("argument errors")
{
    Session s = make_session(parse_scenario(base_scenario()));
    CHECK_THROWS_AS(run_curvature(s, -7, 0), ArgumentError);
    CHECK_THROWS_AS(run_torsion(s, "missing"), ArgumentError);
    CHECK_NOTHROW(run_torsion(s, "nabla"));
}

TEST_CASE("report rendering")
{
    Report r;
    r.command = "verify";
    std::ostringstream empty;
    render_json(empty, r);
    auto j = nlohmann::json::parse(empty.str());
    CHECK(j.at("checks").empty());
    CHECK(r.all_ok());

    r.add(make_check("a", "a = a", true));
    Check v = make_check("b", "0 = 0", true);
    v.status = Status::Vacuous;
    r.add(v);
    std::ostringstream text;
    render_text(text, r);
    CHECK(text.str().find("VACUOUS") != std::string::npos);
    CHECK(text.str().find("PASS") != std::string::npos);
    CHECK(r.all_ok());

    Check u = make_check("c", "?", true);
    u.status = Status::Unsupported;
    r.add(u);
    CHECK_FALSE(r.all_ok());
}
