#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gammac::cli {

/// Runs one command (`args` excludes the program name) and writes a single JSON
/// document to `out`. Exit codes: 0 success or verdict pass, 1 verdict fail,
/// 2 usage, parse or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gammac::cli
