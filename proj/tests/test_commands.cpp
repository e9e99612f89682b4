#include <doctest.h>

#include "ainf/commands.hpp"
#include "helpers.hpp"

using namespace ainf;

namespace {

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string fixture_text(const std::string& name) { return serialize_document(document_from_fixture(name)); }

CommandResult run(const std::string& text, const std::function<CommandResult(const InputDocument&)>& body) {
    return run_guarded(text, body, OutputFormat::text);
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("verify on acyclic2 passes") {
    const CommandResult r = run(fixture_text("acyclic2"), [](const InputDocument& d) { return cmd_verify(d, {}); });
    CHECK(r.exit_code == exit_ok);
    CHECK(contains(r.output, "all checks pass"));
}

TEST_CASE("verify reports a broken algebra") {
    const std::string text = R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
      "products": [{"left": "a", "right": "a", "result": [{"basis": "b", "coeff": "1"}]},
                   {"left": "a", "right": "b", "result": [{"basis": "a", "coeff": "1"}]}]})";
    const CommandResult r = run(text, [](const InputDocument& d) { return cmd_verify(d, {}); });
    CHECK(r.exit_code == exit_precondition);
    CHECK(contains(r.output, "FAIL  associative"));
}

TEST_CASE("transfer on massey5") {
    const CommandResult r =
        run(fixture_text("massey5"), [](const InputDocument& d) { return cmd_transfer(d, {}); });
    CHECK(r.exit_code == exit_ok);
    CHECK(contains(r.output, "truncation K = 5"));
    CHECK(contains(r.output, "mu_3([x], [y], [y]) = [r]"));
    CHECK_FALSE(contains(r.output, "FAIL"));
}

TEST_CASE("Massey product on massey5") {
    const CommandResult r = run(fixture_text("massey5"),
                                [](const InputDocument& d) { return cmd_massey(d, "x", "[y]", "y", {}); });
    CHECK(r.exit_code == exit_ok);
    CHECK(contains(r.output, "<[x], [y], [y]> = [r]"));
    CHECK(contains(r.output, "indeterminacy: zero"));
    CHECK(contains(r.output, "not 2-formal"));
    const CommandResult bad = run(fixture_text("massey5"),
                                  [](const InputDocument& d) { return cmd_massey(d, "x", "q", "y", {}); });
    CHECK(bad.exit_code == exit_input);
}

TEST_CASE("formality on cpn_fp") {
    RunOptions o;
    o.format = OutputFormat::machine;
    const CommandResult r = run(fixture_text("cpn_fp"), [&](const InputDocument& d) { return cmd_formality(d, o); });
    CHECK(r.exit_code == exit_ok);
    CHECK(contains(r.output, "\"achieved_n\": 3"));
    CHECK(contains(r.output, "\"scope_n\": 6"));
    CHECK(contains(r.output, "\"status\": \"formal\""));
    CHECK(contains(r.output, "\"k\": 4"));
}

TEST_CASE("formality exit codes") {
    RunOptions alpha2;
    alpha2.alpha = "2";
    // sigma_alpha does not commute with d on massey5
    CHECK(run(fixture_text("massey5"), [&](const InputDocument& d) { return cmd_formality(d, alpha2); }).exit_code ==
          exit_precondition);
    // truncpoly over F_5 with c = 1: obstruction at k = 4 and no upgrade
    RunOptions f5 = alpha2;
    f5.ring = Ring::prime_field(5);
    f5.c = 1;
    const CommandResult partial =
        run(fixture_text("truncpoly"), [&](const InputDocument& d) { return cmd_formality(d, f5); });
    CHECK(partial.exit_code == exit_partial);
    CHECK(contains(partial.output, "obstruction: k = 4"));
    // missing twist
    CHECK(run(fixture_text("massey5"), [](const InputDocument& d) { return cmd_formality(d, {}); }).exit_code ==
          exit_input);
}

TEST_CASE("input errors") {
    CHECK(run("{", [](const InputDocument& d) { return cmd_verify(d, {}); }).exit_code == exit_input);
    CHECK(cmd_export_fixture("nope").exit_code == exit_input);
    CHECK(cmd_export_fixture("massey5").output == fixture_text("massey5"));
}

}
