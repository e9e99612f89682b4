#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ainf/commands.hpp"

using namespace ainf;

namespace {

struct Flags {
    std::string ring;
    std::string alpha;
    int c = 0;
    int target_n = -1;
    int max_arity = 0;
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* sub, Flags& f, bool twist) {
    sub->add_option("--ring", f.ring, "Read coefficients in this ring instead: Q, F_p (or Fp:p), Z_(p) (or Zloc:p)");
    sub->add_option("--max-arity", f.max_arity,
                    "Truncation arity K (default: the document's run.max_arity, else the bound forced by the "
                    "homology degrees)")
        ->check(CLI::Range(2, 64));
    if (twist) {
        sub->add_option("--alpha", f.alpha,
                        "Twist scalar; overrides the document and replaces its endomorphism by diag(alpha^{n/c})");
        sub->add_option("--c", f.c, "Degree divisor c of the twist (default: document, else 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--target-n", f.target_n, "Largest twist exponent k to try (default 64)")
            ->check(CLI::NonNegativeNumber);
    }
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--out", f.out, "Write the report to this path instead of standard output");
}

RunOptions to_options(const Flags& f) {
    RunOptions o;
    if (!f.ring.empty()) o.ring = parse_ring_spec(f.ring);
    if (!f.alpha.empty()) o.alpha = f.alpha;
    if (f.c > 0) o.c = f.c;
    if (f.target_n >= 0) o.target_n = f.target_n;
    if (f.max_arity > 0) o.max_arity = f.max_arity;
    o.format = f.format == "machine" ? OutputFormat::machine : OutputFormat::text;
    return o;
}

bool read_input(const std::string& path, std::string& text) {
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

int emit(const CommandResult& r, const std::string& out) {
    if (out.empty()) {
        std::cout << r.output;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return exit_input;
        }
        f << r.output;
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transferred A-infinity structures, Massey products and formality certificates.\n"
                 "Exit codes: 0 success or formal, 2 partial (obstruction found), 3 precondition rejected,\n"
                 "4 input error."};
    app.require_subcommand(1);
    Flags flags;
    std::string file, fixture_name, x, y, z;

    auto* transfer = app.add_subcommand("transfer", "Homology, transferred structure and its checks");
    transfer->add_option("file", file, "Input document (- for standard input)")->required();
    add_common(transfer, flags, false);

    auto* formality = app.add_subcommand("formality", "Run the degree-twisting induction and print a certificate");
    formality->add_option("file", file, "Input document (- for standard input)")->required();
    add_common(formality, flags, true);

    auto* massey = app.add_subcommand("massey", "Triple Massey product of three homology classes");
    massey->add_option("file", file, "Input document (- for standard input)")->required();
    massey->add_option("x", x, "First class, e.g. x or [x]")->required();
    massey->add_option("y", y, "Second class")->required();
    massey->add_option("z", z, "Third class")->required();
    add_common(massey, flags, false);

    auto* verify = app.add_subcommand("verify", "Structural checks only");
    verify->add_option("file", file, "Input document (- for standard input)")->required();
    add_common(verify, flags, false);

    auto* exporter = app.add_subcommand("export-fixture", "Print a built-in fixture as an input document");
    exporter->add_option("name", fixture_name, "acyclic2, truncpoly, massey5 or cpn_fp")->required();
    exporter->add_option("--out", flags.out, "Write to this path instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    if (exporter->parsed()) return emit(cmd_export_fixture(fixture_name), flags.out);

    RunOptions opts;
    try {
        opts = to_options(flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return exit_input;
    }
    std::string text;
    if (!read_input(file, text)) {
        std::cerr << "cannot read " << file << "\n";
        return exit_input;
    }

    std::function<CommandResult(const InputDocument&)> body;
    if (transfer->parsed()) body = [&](const InputDocument& d) { return cmd_transfer(d, opts); };
    if (formality->parsed()) body = [&](const InputDocument& d) { return cmd_formality(d, opts); };
    if (massey->parsed()) body = [&](const InputDocument& d) { return cmd_massey(d, x, y, z, opts); };
    if (verify->parsed()) body = [&](const InputDocument& d) { return cmd_verify(d, opts); };
    return emit(run_guarded(text, body, opts.format), flags.out);
}
