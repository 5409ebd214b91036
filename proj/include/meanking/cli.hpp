// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands map one-to-one onto the library's
// entry points: `verify` certifies a solution, `derive` reconstructs error
// operators and index sets from a syndrome basis, `build` runs the
// Latin-square construction, `simulate` plays the game, and `example` dumps
// a builtin fixture. Exit codes: 0 success/positive verdict, 1 completed
// run with a negative verdict, 2 input or validation error.

#pragma once

#include <string>
#include <vector>

#include "meanking/simulator.hpp"
#include "meanking/solutions.hpp"

namespace meanking {

struct CliResult {
  int exit_code = 0;
  std::string output;
};

/// Parses and executes one invocation; `args` excludes the program name.
/// Never throws: failures surface as exit code 2 with a diagnostic.
CliResult run_cli(const std::vector<std::string>& args);

/// Renderers behind --format. "json" is canonical (sorted keys, 12
/// significant digits, byte-stable); "table" is aligned text whose index-set
/// block lists one (J, i, X^(J,i)) row per outcome.
std::string render_report(const SolutionCertificate& cert,
                          const IndexFamily& family, const std::string& format);
std::string render_report(const DerivedSolution& derived, const std::string& format);
std::string render_report(const ExperimentStats& stats, const std::string& format);
std::string render_report(const Setup& setup, const std::string& format);

}  // namespace meanking
