#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swfh/error.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

enum ExitCode {
    ExitOk = 0,
    ExitPropertyFail = 1,
    ExitUsage = 2,
};

int exit_code(ErrorKind kind);

/// Evaluates a construction expression such as `attach(sphere(0,1), 2, y1=1)`.
Complex evaluate_expression(const std::string& text);
/// A path to a BCX file, or else a construction expression.
Complex load_input(const std::string& arg);

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swfh
