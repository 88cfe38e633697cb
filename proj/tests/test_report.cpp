#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valext/properties.hpp"
#include "valext/report.hpp"
#include "valext/runner.hpp"
#include "valext/scenario.hpp"

using namespace valext;

TEST_CASE("value result and group element serialization") {
    nlohmann::ordered_json lex = group_to_json(GroupElement::lex({1, 0}));
    CHECK(lex.dump() == "{\"lex\":[1,0]}");
    nlohmann::ordered_json quad = group_to_json(GroupElement::quad(rat(1, 2), rat(-3)));
    CHECK(quad.dump() == "{\"quad\":{\"a\":\"1/2\",\"b\":\"-3\"}}");
    CHECK(value_result_to_json(ValueResult::infinity()).dump() == "{\"infinity\":true}");
    CHECK(value_result_to_json(ValueResult::finite(GroupElement::lex({2}))).dump() ==
          "{\"finite\":{\"lex\":[2]}}");
    CHECK(value_result_to_json(ValueResult::bounded_below(GroupElement::lex({5}))).dump() ==
          "{\"bounded_below\":{\"lex\":[5]}}");
}

TEST_CASE("exit codes follow the verdict") {
    Report rep;
    rep.kind = "scenario";
    rep.subject = "t";
    rep.checks.push_back(CheckRecord::passed("a"));
    CHECK(rep.verdict() == "pass");
    CHECK(rep.exit_code() == 0);
    rep.checks.push_back(CheckRecord::unknown("b"));
    CHECK(rep.verdict() == "unknown");
    CHECK(rep.exit_code() == 2);
    rep.checks.push_back(CheckRecord::failed("c"));
    CHECK(rep.verdict() == "fail");
    CHECK(rep.exit_code() == 1);
}

TEST_CASE("reports are byte-stable for fixed flags and seed") {
    RunOptions opts;
    opts.truncation = 6;
    opts.bound = 4;
    opts.samples = 20;
    Report a = run_scenario("example_2_2", opts);
    Report b = run_scenario("example_2_2", opts);
    CHECK(a.to_json(false).dump(2) == b.to_json(false).dump(2));
    CHECK(a.verdict() == "pass");

    RunOptions popts;
    popts.samples = 25;
    Report p1 = run_properties("valgroup-axioms", popts);
    Report p2 = run_properties("valgroup-axioms", popts);
    CHECK(p1.to_json(false).dump() == p2.to_json(false).dump());
}

TEST_CASE("different seeds change sampled data but not verdicts") {
    RunOptions a, b;
    a.truncation = b.truncation = 6;
    a.bound = b.bound = 4;
    a.samples = b.samples = 15;
    b.seed = 7;
    Report ra = run_scenario("example_2_2", a);
    Report rb = run_scenario("example_2_2", b);
    CHECK(ra.verdict() == "pass");
    CHECK(rb.verdict() == "pass");
    CHECK(ra.to_json().dump() != rb.to_json().dump());  // the c_i differ
}

TEST_CASE("timings only appear on request") {
    RunOptions opts;
    opts.truncation = 5;
    opts.bound = 3;
    opts.samples = 5;
    Report rep = run_scenario("example_2_2", opts);
    CHECK(rep.to_json(false).dump().find("millis") == std::string::npos);
    CHECK(rep.to_json(true).dump().find("millis") != std::string::npos);
}

TEST_CASE("scenario catalog echo carries the flags") {
    RunOptions opts;
    opts.truncation = 5;
    opts.bound = 3;
    opts.samples = 5;
    Report rep = run_scenario("example_2_2", opts);
    auto j = rep.to_json();
    CHECK(j.at("flags").at("truncation") == 5);
    CHECK(j.at("subject") == "example_2_2");
    CHECK(j.at("kind") == "scenario");
    CHECK(std::string(j.at("version")) == std::string(VALEXT_VERSION));
}
