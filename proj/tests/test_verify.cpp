#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avlab/verify.hpp"

#include <set>
#include <string>

using namespace avlab;

TEST_CASE("registry covers the advertised checks") {
    // fast must include every inequality / identity family; full adds the 3D
    // and scan checks
    const std::size_t fast = registry_size(SuiteLevel::Fast);
    const std::size_t full = registry_size(SuiteLevel::Full);
    CHECK(fast >= 22);
    CHECK(full >= fast + 5);
}

TEST_CASE("fast suite passes on the default seed") {
    SuiteOptions opts;
    const auto reports = run_suite(opts);
    CHECK(reports.size() == registry_size(SuiteLevel::Fast));

    std::set<std::string> names;
    for (const CheckReport& r : reports) {
        CAPTURE(r.name);
        CAPTURE(r.measured);
        CAPTURE(r.tolerance);
        CAPTURE(r.note);
        CHECK(r.pass);
        names.insert(r.name);
    }
    // required coverage by name
    for (const char* want :
         {"comp-inequality-p2", "trichotomy", "superadditivity", "radial-equality",
          "alpha-identity-2d", "kernel-identity", "weakform-self-pairing", "gradient-fd-p2",
          "sl2-invariance-energy", "sl2-invariance-eigen", "talenti-agreement",
          "eigen-upper-bound", "eigen-vs-classical", "subcritical-el-residual",
          "pohozaev-radial", "witness-signs", "lambda-star-positive", "restart-determinism",
          "homogeneity", "kato"})
        CHECK(names.count(want) == 1);
}

TEST_CASE("corrupt fixture is reported as data, not an exception") {
    SuiteOptions opts;
    opts.corrupt_fixture = true;
    const auto reports = run_suite(opts);
    REQUIRE(reports.size() == registry_size(SuiteLevel::Fast) + 1);
    const CheckReport& last = reports.back();
    CHECK(last.name == "corrupt-fixture");
    CHECK_FALSE(last.pass);
    CHECK(last.note == "NonFinite");
    CHECK_FALSE(all_pass(reports));
}
