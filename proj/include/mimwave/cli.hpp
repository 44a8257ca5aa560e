#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimwave/operators.hpp"

namespace mimwave {

// Reads a system description (incidence matrix, measure, optional
// geometry) from a JSON file. Throws config_error on malformed input,
// input_error when the described objects fail validation.
SystemSpec load_system(const std::string& path);
SystemSpec parse_system_json(const std::string& text);

// FNV-1a 64-bit digest, lowercase hex; keyed on the raw bytes of the
// system file so reports can be traced to their input.
std::string fnv1a_hex(const std::string& bytes);

namespace cli {

// Entry point behind the binary: parses args (without argv[0]), runs one
// subcommand, writes the report to out (or --out PATH), diagnostics to err.
// Exit codes: 0 success, 1 validation failure or tolerance breach,
// 2 usage / configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace mimwave
