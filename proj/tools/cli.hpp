#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hessbound::cli {

/// Runs the command line; returns the process exit code (0 ok, 2 input
/// error, 3 numerical failure). Primary output goes to `out` unless --out
/// names a directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed of the i-th body of a corpus.
unsigned long long corpus_body_seed(unsigned long long seed, std::size_t i);

}  // namespace hessbound::cli
