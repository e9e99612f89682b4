#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ainf/document.hpp"
#include "helpers.hpp"

using namespace ainf;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* minimal = R"({
  "ring": {"kind": "Fp", "p": 5},
  "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": -1}],
  "differential": [{"from": "a", "to": "b", "coeff": "2"}],
  "products": [{"left": "a", "right": "a", "result": [{"basis": "a", "coeff": "1"}]}]
})";

template <class E>
std::string error_of(const std::string& text) {
    try {
        parse_document(text);
    } catch (const E& e) {
        return e.what();
    }
    return "no error";
}

}  // namespace

TEST_SUITE("document") {

TEST_CASE("golden massey5 document") {
    const std::string golden = read_file(std::string(AINF_TEST_DATA) + "/massey5.json");
    REQUIRE_FALSE(golden.empty());
    CHECK(serialize_document(document_from_fixture("massey5")) == golden);
    CHECK(serialize_document(parse_document(golden)) == golden);
}

TEST_CASE("all fixtures round-trip") {
    for (const auto& name : fixture_names()) {
        const InputDocument doc = document_from_fixture(name);
        const std::string text = serialize_document(doc);
        CHECK(parse_document(text) == doc);
        CHECK(serialize_document(parse_document(text)) == text);
        // the algebra is rebuilt exactly
        const Fixture f = fixture(name);
        const DgAlgebra A = to_dga(doc);
        CHECK(A.product() == f.algebra.product());
        CHECK(A.d().matrix() == f.algebra.d().matrix());
        if (f.twist) CHECK(endomorphism_map(doc, A.module())->matrix() == f.twist->sigma_hat.matrix());
    }
}

TEST_CASE("minimal document") {
    const InputDocument doc = parse_document(minimal);
    CHECK(doc.ring == Ring::prime_field(5));
    CHECK(doc.basis.size() == 2);
    CHECK_FALSE(doc.twist);
    const DgAlgebra A = to_dga(doc);
    CHECK(A.d().image(0) == testing::vec(A.ring(), {{1, "2"}}));
}

TEST_CASE("empty basis is a valid zero algebra") {
    const InputDocument doc = parse_document(R"({"ring": {"kind": "Q"}, "basis": []})");
    CHECK(to_dga(doc).module()->dim() == 0);
}

TEST_CASE("unknown basis names are named") {
    const std::string text = R"({"ring": {"kind": "Q"}, "basis": [{"name": "x", "degree": 0}],
        "products": [{"left": "x", "right": "q", "result": []}]})";
    try {
        parse_document(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field == "products[0].right");
        CHECK(std::string(e.what()).find("'q'") != std::string::npos);
    }
}

TEST_CASE("validation errors") {
    CHECK(error_of<ValidationError>(R"({"ring": {"kind": "Q"}})").find("basis") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"ring": {"kind": "Fp", "p": 6}, "basis": []})").find("ring.p") !=
          std::string::npos);
    CHECK(error_of<ValidationError>(R"({"ring": {"kind": "Q"}, "basis": [], "extra": 1})").find("extra") !=
          std::string::npos);
    CHECK(error_of<ValidationError>(
              R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": 0}, {"name": "a", "degree": 1}]})")
              .find("duplicate") != std::string::npos);
    // d must lower degree by one
    CHECK(error_of<ValidationError>(
              R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
                  "differential": [{"from": "a", "to": "b", "coeff": "1"}]})")
              .find("differential[0].to") != std::string::npos);
    // product degrees add
    CHECK(error_of<ValidationError>(
              R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": 1}],
                  "products": [{"left": "a", "right": "a", "result": [{"basis": "a", "coeff": "1"}]}]})")
              .find("products[0].result[0].basis") != std::string::npos);
    // 1/5 does not exist in F_5
    CHECK(error_of<ValidationError>(
              R"({"ring": {"kind": "Fp", "p": 5}, "basis": [{"name": "a", "degree": 0}],
                  "endomorphism": [{"from": "a", "to": "a", "coeff": "1/5"}]})")
              .find("endomorphism[0].coeff") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"ring": {"kind": "Q"}, "basis": [], "twist": {"alpha": "2", "c": 0}})")
              .find("twist.c") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": "0"}]})")
              .find("basis[0].degree") != std::string::npos);
}

TEST_CASE("parse errors carry a location") {
    try {
        parse_document("{\n  \"ring\": {\"kind\": \"Q\"},\n  \"basis\": [,]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 13);
    }
    CHECK_THROWS_AS(parse_document(""), ParseError);
}

TEST_CASE("reading coefficients in another ring") {
    const InputDocument doc = parse_document(R"({"ring": {"kind": "Q"}, "basis": [{"name": "a", "degree": 0}],
        "products": [{"left": "a", "right": "a", "result": [{"basis": "a", "coeff": "7/2"}]}]})");
    const DgAlgebra A = to_dga(doc, Ring::prime_field(5));
    CHECK(A.multiply(0, 0) == testing::vec(A.ring(), {{0, "1"}}));
    CHECK_THROWS_AS(to_dga(doc, Ring::local_integers(2)), ValidationError);
}

TEST_CASE("ring specs") {
    CHECK(parse_ring_spec("Q") == Ring::rationals());
    CHECK(parse_ring_spec("F_5") == Ring::prime_field(5));
    CHECK(parse_ring_spec("Fp:7") == Ring::prime_field(7));
    CHECK(parse_ring_spec("Z_(3)") == Ring::local_integers(3));
    CHECK(parse_ring_spec("Zloc:11") == Ring::local_integers(11));
    CHECK_THROWS_AS(parse_ring_spec("F_6"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring_spec("R"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring_spec("F_"), std::invalid_argument);
}

}
