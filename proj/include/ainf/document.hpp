#pragma once

// JSON input documents describing a strict dg-algebra and run parameters.
//
//   {
//     "ring": {"kind": "Fp", "p": 5},
//     "basis": [{"name": "x", "degree": -2}, ...],
//     "differential": [{"from": "s", "to": "w", "coeff": "1"}],
//     "products": [{"left": "x", "right": "y", "result": [{"basis": "w", "coeff": "1"}]}],
//     "endomorphism": [{"from": "x", "to": "x", "coeff": "2"}],
//     "twist": {"alpha": "2", "c": 2},
//     "run": {"max_arity": 5, "target_n": 64}
//   }
//
// Only "ring" and "basis" are required. Coefficients are strings ("3", "-1/2").

#include <optional>
#include <string>
#include <vector>

#include "ainf/dga.hpp"
#include "ainf/errors.hpp"
#include "ainf/formality.hpp"

namespace ainf {

struct ParseError : Error {
    ParseError(int line_, int column_, const std::string& what)
        : Error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
    int line;
    int column;
};

struct ValidationError : Error {
    ValidationError(std::string field_, const std::string& what)
        : Error(field_ + ": " + what), field(std::move(field_)) {}
    std::string field;  // e.g. "products[2].result[0].basis"
};

struct DocTerm {
    std::string basis;
    std::string coeff;
    friend bool operator==(const DocTerm&, const DocTerm&) = default;
};

struct DocMatrixEntry {  // differential and endomorphism: from -> coeff * to
    std::string from;
    std::string to;
    std::string coeff;
    friend bool operator==(const DocMatrixEntry&, const DocMatrixEntry&) = default;
};

struct DocProduct {
    std::string left;
    std::string right;
    std::vector<DocTerm> result;
    friend bool operator==(const DocProduct&, const DocProduct&) = default;
};

struct DocTwist {
    std::string alpha;
    int c = 1;
    friend bool operator==(const DocTwist&, const DocTwist&) = default;
};

struct DocRun {
    std::optional<int> max_arity;
    std::optional<int> target_n;
    friend bool operator==(const DocRun&, const DocRun&) = default;
};

struct InputDocument {
    Ring ring = Ring::rationals();
    std::vector<BasisElement> basis;
    std::vector<DocMatrixEntry> differential;
    std::vector<DocProduct> products;
    std::optional<std::vector<DocMatrixEntry>> endomorphism;
    std::optional<DocTwist> twist;
    std::optional<DocRun> run;

    friend bool operator==(const InputDocument& a, const InputDocument& b);
};

// Strict: unknown keys, unknown basis names, unparsable coefficients and degree
// violations are ValidationErrors; malformed JSON is a ParseError.
InputDocument parse_document(const std::string& text);
std::string serialize_document(const InputDocument& doc);

// Coefficients are read in `ring` when given, otherwise in the document's ring.
// Rejects values that do not exist there (e.g. 1/5 over F_5) with ValidationError.
DgAlgebra to_dga(const InputDocument& doc, const std::optional<Ring>& ring = std::nullopt);
std::optional<GradedMap> endomorphism_map(const InputDocument& doc, const ModulePtr& module);
std::optional<Scalar> twist_alpha(const InputDocument& doc, const Ring& ring);

InputDocument document_from_fixture(const std::string& name);

// "Q", "F_5", "Fp:5", "Z_(7)", "Zloc:7". Throws std::invalid_argument.
Ring parse_ring_spec(const std::string& spec);

}  // namespace ainf
