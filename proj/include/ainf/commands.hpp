#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ainf/document.hpp"

namespace ainf {

// Exit status contract of the command line tool.
enum ExitCode : int {
    exit_ok = 0,            // success; formal or formal up to K
    exit_partial = 2,       // obstruction found or target below K - 1
    exit_precondition = 3,  // rejected twisting, non-complex, torsion homology, failed checks
    exit_input = 4,         // unreadable or invalid input
};

enum class OutputFormat { text, machine };

struct RunOptions {
    std::optional<Ring> ring;
    std::optional<std::string> alpha;
    std::optional<int> c;
    std::optional<int> target_n;
    std::optional<int> max_arity;
    OutputFormat format = OutputFormat::text;
};

struct CommandResult {
    int exit_code = exit_ok;
    std::string output;
};

CommandResult cmd_transfer(const InputDocument& doc, const RunOptions& opts);
CommandResult cmd_formality(const InputDocument& doc, const RunOptions& opts);
// Names are homology basis names, with or without brackets ("x" or "[x]").
CommandResult cmd_massey(const InputDocument& doc, const std::string& x, const std::string& y, const std::string& z,
                         const RunOptions& opts);
CommandResult cmd_verify(const InputDocument& doc, const RunOptions& opts);
CommandResult cmd_export_fixture(const std::string& name);

// Reads and parses the document, runs `body`, and maps library errors to exit codes.
CommandResult run_guarded(const std::string& text,
                          const std::function<CommandResult(const InputDocument&)>& body, OutputFormat format);

}  // namespace ainf
