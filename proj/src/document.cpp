#include "ainf/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "ainf/oracle.hpp"

namespace ainf {

using json = nlohmann::ordered_json;

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path, what); }

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            fail(path + "." + it.key(), "unknown key");
}

std::string get_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

int get_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) fail(path, "out of range");
    return static_cast<int>(x);
}

const json& get_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Ring parse_ring(const json& v, const std::string& path) {
    only_keys(v, {"kind", "p"}, path);
    const std::string kind = get_string(require(v, "kind", path), path + ".kind");
    if (kind == "Q") {
        if (v.contains("p")) fail(path + ".p", "not allowed for kind Q");
        return Ring::rationals();
    }
    if (kind != "Fp" && kind != "Zloc") fail(path + ".kind", "must be one of Q, Fp, Zloc");
    const int p = get_int(require(v, "p", path), path + ".p");
    try {
        return kind == "Fp" ? Ring::prime_field(p) : Ring::local_integers(p);
    } catch (const std::invalid_argument& e) {
        fail(path + ".p", e.what());
    }
}

Scalar parse_coeff(const Ring& ring, const std::string& text, const std::string& path) {
    try {
        return Scalar::parse(ring, text);
    } catch (const NonUnit&) {
        fail(path, "'" + text + "' does not exist in " + ring.name());
    } catch (const std::invalid_argument&) {
        fail(path, "malformed coefficient '" + text + "'");
    }
}

struct Names {
    std::map<std::string, int> degree;
    int lookup(const std::string& name, const std::string& path) const {
        auto it = degree.find(name);
        if (it == degree.end()) fail(path, "unknown basis element '" + name + "'");
        return it->second;
    }
};

std::vector<DocTerm> parse_result(const json& v, const std::string& path, const Names& names, const Ring& ring,
                                  int expected_degree) {
    std::vector<DocTerm> out;
    std::set<std::string> seen;
    const json& arr = get_array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(path, i);
        only_keys(arr[i], {"basis", "coeff"}, p);
        DocTerm t{get_string(require(arr[i], "basis", p), p + ".basis"),
                  get_string(require(arr[i], "coeff", p), p + ".coeff")};
        const int deg = names.lookup(t.basis, p + ".basis");
        if (deg != expected_degree)
            fail(p + ".basis", "'" + t.basis + "' has degree " + std::to_string(deg) + ", expected " +
                                   std::to_string(expected_degree));
        if (!seen.insert(t.basis).second) fail(p + ".basis", "'" + t.basis + "' listed twice");
        parse_coeff(ring, t.coeff, p + ".coeff");
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<DocMatrixEntry> parse_matrix(const json& v, const std::string& path, const Names& names,
                                         const Ring& ring, int shift) {
    std::vector<DocMatrixEntry> out;
    std::set<std::pair<std::string, std::string>> seen;
    const json& arr = get_array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(path, i);
        only_keys(arr[i], {"from", "to", "coeff"}, p);
        DocMatrixEntry e{get_string(require(arr[i], "from", p), p + ".from"),
                         get_string(require(arr[i], "to", p), p + ".to"),
                         get_string(require(arr[i], "coeff", p), p + ".coeff")};
        const int from = names.lookup(e.from, p + ".from");
        const int to = names.lookup(e.to, p + ".to");
        if (to != from + shift)
            fail(p + ".to", "'" + e.to + "' has degree " + std::to_string(to) + ", expected " +
                                std::to_string(from + shift));
        if (!seen.insert({e.from, e.to}).second) fail(p, "entry (" + e.from + ", " + e.to + ") listed twice");
        parse_coeff(ring, e.coeff, p + ".coeff");
        out.push_back(std::move(e));
    }
    return out;
}

json result_json(const std::vector<DocTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back(json{{"basis", t.basis}, {"coeff", t.coeff}});
    return arr;
}

json matrix_json(const std::vector<DocMatrixEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(json{{"from", e.from}, {"to", e.to}, {"coeff", e.coeff}});
    return arr;
}

Matrix matrix_of(const std::vector<DocMatrixEntry>& entries, const GradedModule& m, const Ring& ring,
                 const std::string& path) {
    Matrix out(ring, m.dim(), m.dim());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        out.at(*m.find(e.to), *m.find(e.from)) = parse_coeff(ring, e.coeff, idx(path, i) + ".coeff");
    }
    return out;
}

std::vector<DocMatrixEntry> entries_of(const GradedMap& f) {
    const GradedModule& m = *f.source();
    std::vector<DocMatrixEntry> out;
    for (int j = 0; j < m.dim(); ++j)
        for (const auto& t : f.image(j)) out.push_back({m.element(j).name, m.element(t.index).name, t.coeff.to_string()});
    return out;
}

std::vector<DocTerm> terms_of(const SparseVec& v, const GradedModule& m) {
    std::vector<DocTerm> out;
    for (const auto& t : v) out.push_back({m.element(t.index).name, t.coeff.to_string()});
    return out;
}

SparseVec vector_of(const std::vector<DocTerm>& terms, const GradedModule& m, const Ring& ring,
                    const std::string& path) {
    Accumulator acc(ring, m.dim());
    for (std::size_t i = 0; i < terms.size(); ++i)
        acc.add(*m.find(terms[i].basis), parse_coeff(ring, terms[i].coeff, idx(path, i) + ".coeff"));
    return acc.take();
}

}  // namespace

bool operator==(const InputDocument& a, const InputDocument& b) {
    return a.ring == b.ring && a.basis == b.basis && a.differential == b.differential && a.products == b.products &&
           a.endomorphism == b.endomorphism && a.twist == b.twist && a.run == b.run;
}

InputDocument parse_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ParseError(line, col, msg);
    }
    only_keys(root, {"ring", "basis", "differential", "products", "endomorphism", "twist", "run"}, "document");

    InputDocument doc;
    doc.ring = parse_ring(require(root, "ring", "document"), "ring");

    Names names;
    const json& basis = get_array(require(root, "basis", "document"), "basis");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string p = idx("basis", i);
        only_keys(basis[i], {"name", "degree"}, p);
        BasisElement e{get_string(require(basis[i], "name", p), p + ".name"),
                       get_int(require(basis[i], "degree", p), p + ".degree")};
        if (e.name.empty()) fail(p + ".name", "empty name");
        if (!names.degree.emplace(e.name, e.degree).second) fail(p + ".name", "duplicate name '" + e.name + "'");
        doc.basis.push_back(std::move(e));
    }

    if (root.contains("differential"))
        doc.differential = parse_matrix(root["differential"], "differential", names, doc.ring, -1);

    if (root.contains("products")) {
        const json& arr = get_array(root["products"], "products");
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = idx("products", i);
            only_keys(arr[i], {"left", "right", "result"}, p);
            DocProduct e;
            e.left = get_string(require(arr[i], "left", p), p + ".left");
            e.right = get_string(require(arr[i], "right", p), p + ".right");
            const int deg = names.lookup(e.left, p + ".left") + names.lookup(e.right, p + ".right");
            if (!seen.insert({e.left, e.right}).second)
                fail(p, "product (" + e.left + ", " + e.right + ") listed twice");
            e.result = parse_result(require(arr[i], "result", p), p + ".result", names, doc.ring, deg);
            doc.products.push_back(std::move(e));
        }
    }

    if (root.contains("endomorphism"))
        doc.endomorphism = parse_matrix(root["endomorphism"], "endomorphism", names, doc.ring, 0);

    if (root.contains("twist")) {
        const json& t = root["twist"];
        only_keys(t, {"alpha", "c"}, "twist");
        DocTwist tw;
        tw.alpha = get_string(require(t, "alpha", "twist"), "twist.alpha");
        parse_coeff(doc.ring, tw.alpha, "twist.alpha");
        if (t.contains("c")) tw.c = get_int(t["c"], "twist.c");
        if (tw.c < 1) fail("twist.c", "must be at least 1");
        doc.twist = std::move(tw);
    }

    if (root.contains("run")) {
        const json& r = root["run"];
        only_keys(r, {"max_arity", "target_n"}, "run");
        DocRun run;
        if (r.contains("max_arity")) {
            run.max_arity = get_int(r["max_arity"], "run.max_arity");
            if (*run.max_arity < 2) fail("run.max_arity", "must be at least 2");
        }
        if (r.contains("target_n")) {
            run.target_n = get_int(r["target_n"], "run.target_n");
            if (*run.target_n < 0) fail("run.target_n", "must be nonnegative");
        }
        doc.run = run;
    }
    return doc;
}

std::string serialize_document(const InputDocument& doc) {
    json root;
    json ring{{"kind", doc.ring.kind_tag()}};
    if (doc.ring.kind() != RingKind::rationals) ring["p"] = doc.ring.prime();
    root["ring"] = ring;
    json basis = json::array();
    for (const auto& b : doc.basis) basis.push_back(json{{"name", b.name}, {"degree", b.degree}});
    root["basis"] = basis;
    root["differential"] = matrix_json(doc.differential);
    json products = json::array();
    for (const auto& p : doc.products)
        products.push_back(json{{"left", p.left}, {"right", p.right}, {"result", result_json(p.result)}});
    root["products"] = products;
    if (doc.endomorphism) root["endomorphism"] = matrix_json(*doc.endomorphism);
    if (doc.twist) root["twist"] = json{{"alpha", doc.twist->alpha}, {"c", doc.twist->c}};
    if (doc.run) {
        json run = json::object();
        if (doc.run->max_arity) run["max_arity"] = *doc.run->max_arity;
        if (doc.run->target_n) run["target_n"] = *doc.run->target_n;
        root["run"] = run;
    }
    return root.dump(2) + "\n";
}

DgAlgebra to_dga(const InputDocument& doc, const std::optional<Ring>& ring_override) {
    const Ring ring = ring_override.value_or(doc.ring);
    ModulePtr M = make_module(ring, doc.basis);
    const int n = M->dim();
    Matrix d = matrix_of(doc.differential, *M, ring, "differential");
    MultilinearMap prod(2, n);
    for (std::size_t i = 0; i < doc.products.size(); ++i) {
        const auto& e = doc.products[i];
        SparseVec v = vector_of(e.result, *M, ring, idx("products", i) + ".result");
        prod.set(std::vector<int>{*M->find(e.left), *M->find(e.right)}, std::move(v));
    }
    return DgAlgebra(M, GradedMap(M, M, -1, std::move(d)), std::move(prod));
}

std::optional<GradedMap> endomorphism_map(const InputDocument& doc, const ModulePtr& module) {
    if (!doc.endomorphism) return std::nullopt;
    return GradedMap(module, module, 0, matrix_of(*doc.endomorphism, *module, module->ring(), "endomorphism"));
}

std::optional<Scalar> twist_alpha(const InputDocument& doc, const Ring& ring) {
    if (!doc.twist) return std::nullopt;
    return parse_coeff(ring, doc.twist->alpha, "twist.alpha");
}

InputDocument document_from_fixture(const std::string& name) {
    const Fixture f = fixture(name);
    const DgAlgebra& A = f.algebra;
    const GradedModule& M = *A.module();
    InputDocument doc;
    doc.ring = A.ring();
    doc.basis = M.basis();
    doc.differential = entries_of(A.d());
    for (WordCode code : A.product().sorted_codes()) {
        auto w = A.product().decode(code);
        doc.products.push_back(
            {M.element(w[0]).name, M.element(w[1]).name, terms_of(*A.product().find(code), M)});
    }
    if (f.twist) {
        doc.endomorphism = entries_of(f.twist->sigma_hat);
        doc.twist = DocTwist{f.twist->alpha.to_string(), f.twist->c};
    }
    std::set<int> support;
    for (auto [deg, r] : homology_ranks(A.complex())) support.insert(deg);
    if (!degree_forced_arity(support)) doc.run = DocRun{5, std::nullopt};
    return doc;
}

Ring parse_ring_spec(const std::string& spec) {
    auto prime_after = [&](std::size_t pos, std::size_t end) {
        const std::string digits = spec.substr(pos, end - pos);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 10)
            throw std::invalid_argument("malformed ring '" + spec + "'");
        return std::stoll(digits);
    };
    if (spec == "Q") return Ring::rationals();
    if (spec.rfind("Fp:", 0) == 0) return Ring::prime_field(prime_after(3, spec.size()));
    if (spec.rfind("F_", 0) == 0) return Ring::prime_field(prime_after(2, spec.size()));
    if (spec.rfind("Zloc:", 0) == 0) return Ring::local_integers(prime_after(5, spec.size()));
    if (spec.rfind("Z_(", 0) == 0 && spec.back() == ')') return Ring::local_integers(prime_after(3, spec.size() - 1));
    throw std::invalid_argument("unknown ring '" + spec + "' (use Q, F_p, Fp:p, Z_(p) or Zloc:p)");
}

}  // namespace ainf
