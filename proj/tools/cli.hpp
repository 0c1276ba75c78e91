/*
 * cli.hpp
 * -------
 * Command dispatch, separated from main() so tests can drive the CLI
 * in-process. Exit codes: 0 success, 1 negative verdict, 2 input error,
 * 3 internal criteria disagreement.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace courant::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace courant::cli
