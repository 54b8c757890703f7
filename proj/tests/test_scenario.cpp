#include <doctest.h>

#include <sstream>

#include "fomforge/scenario.hpp"
#include "support/fixtures.hpp"

using namespace fomforge;
using namespace fomforge::testgen;

namespace {

ScenarioResult run(const std::string& script, bool trace = false) {
    ScenarioOptions options;
    options.base_dir = FOMFORGE_TEST_DATA_DIR;
    options.trace = trace;
    std::ostringstream out;
    return run_scenario(script, options, out);
}

ScenarioResult run_capture(const std::string& script, std::string& output) {
    ScenarioOptions options;
    options.base_dir = FOMFORGE_TEST_DATA_DIR;
    std::ostringstream out;
    const auto result = run_scenario(script, options, out);
    output = out.str();
    return result;
}

}  // namespace

TEST_CASE("empty script succeeds") {
    const auto result = run("");
    CHECK(result.exit_code == 0);
    CHECK(result.commands_run == 0);

    const auto comments_only = run("# nothing here\n\n   # still nothing\n");
    CHECK(comments_only.exit_code == 0);
}

TEST_CASE("composite scenario script passes end to end") {
    const auto result = run(read_fixture("composite_scenario.fsc"));
    CHECK(result.exit_code == 0);
    CHECK(result.expects_failed == 0);
    CHECK(result.expects_passed > 0);
}

TEST_CASE("rejection scenario passes by expecting errors") {
    const auto result = run(read_fixture("reject_scenario.fsc"));
    CHECK(result.exit_code == 0);
    CHECK(result.expects_failed == 0);
}

TEST_CASE("failed expectation yields exit 3") {
    const auto result = run("create Fed module1.fmod\nexpect error\n");
    CHECK(result.exit_code == 3);
    CHECK(result.expects_failed == 1);
}

TEST_CASE("expectation on a rule id") {
    std::string output;
    const auto result = run_capture(
        "create Fed module2.fmod\nexpect error MERGE-006\n"
        "create Fed module2.fmod\nexpect error MERGE-001\n",
        output);
    CHECK(result.exit_code == 3);  // second expectation names the wrong rule
    CHECK(result.expects_passed == 1);
    CHECK(result.expects_failed == 1);
    CHECK(output.find("expected rule MERGE-001, got MERGE-006") != std::string::npos);
}

TEST_CASE("unknown command is a script error") {
    const auto result = run("blorp Fed\n");
    CHECK(result.exit_code == 1);
}

TEST_CASE("missing module file is an expectable command error") {
    const auto result = run("create Fed no_such_file.fmod\nexpect error FILE-001\n");
    CHECK(result.exit_code == 0);
    CHECK(result.expects_passed == 1);
}

TEST_CASE("handle output is printed for comparison") {
    std::string output;
    const auto result = run_capture(
        "create Fed module1.fmod\nhandle Fed Aircraft\nexpect ok\n", output);
    CHECK(result.exit_code == 0);
    CHECK(output.find("handle HLAobjectRoot.Aircraft = ") != std::string::npos);
}

TEST_CASE("mom output frames the document data") {
    std::string output;
    const auto result = run_capture("create Fed module1.fmod\nmom Fed\nexpect ok\n", output);
    CHECK(result.exit_code == 0);
    CHECK(output.find("mom modules=FOMmodule1") != std::string::npos);
    CHECK(output.find("fdd-begin") != std::string::npos);
    CHECK(output.find("fdd-end") != std::string::npos);
}

TEST_CASE("custom MIM flows through create and is reported verbatim") {
    std::string output;
    const auto result = run_capture(
        "create Fed --mim custom_mim.fmod module1.fmod\nexpect ok\n"
        "mom Fed\nexpect ok\nreqmim Fed\nexpect ok\n",
        output);
    CHECK(result.exit_code == 0);
    CHECK(output.find("mom mim=CustomMIM") != std::string::npos);

    // The report payload is the exact file content.
    const std::string mim_text = read_fixture("custom_mim.fmod");
    const std::string marker = "payload-bytes " + std::to_string(mim_text.size());
    CHECK(output.find(marker) != std::string::npos);
    CHECK(output.find(mim_text) != std::string::npos);
}

TEST_CASE("trace prints the event log") {
    ScenarioOptions options;
    options.base_dir = FOMFORGE_TEST_DATA_DIR;
    options.trace = true;
    std::ostringstream out;
    const auto result =
        run_scenario("create Fed module1.fmod\njoin Logger Fed\n", options, out);
    CHECK(result.exit_code == 0);
    CHECK(out.str().find("trace Fed create") != std::string::npos);
    CHECK(out.str().find("trace Fed join Logger") != std::string::npos);
}
