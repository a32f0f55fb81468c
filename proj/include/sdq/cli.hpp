#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sdq/experiments.hpp"

namespace sdq {

// Flat "key = value" lines; '#' starts a comment, blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_flat_config(
    std::istream& in);

// Sets the SweepConfig field named `key` (ensemble, n, s, r, delta, alpha,
// m_grid, trials, seed, output) from its text form.
void apply_sweep_setting(SweepConfig& cfg, const std::string& key,
                         const std::string& value);

// Entry point of the `sdq` tool. Subcommands: gen, quantize, reconstruct,
// ripscan, sweep, summarize. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sdq
