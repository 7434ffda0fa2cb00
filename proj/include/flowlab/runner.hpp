#ifndef FLOWLAB_RUNNER_HPP
#define FLOWLAB_RUNNER_HPP

#include <string>

#include "flowlab/manifest.hpp"

namespace flowlab {

/// Execute the simulate outputs (trajectory/field CSV) of a validated run.
/// Files are written atomically (temp + rename). Throws on failure.
void run_simulate(const RunConfig& run);

/// Run the verification suite, write the report JSON when requested, and
/// return the aggregate verdict.
bool run_verify(const RunConfig& run);

/// Machine-readable preset catalog: array of {name, family, paper_example}.
Json presets_json();

/// Report JSON for a finished suite (also used by the C API).
Json report_json(const RunConfig& run, const std::vector<CheckReport>& checks);

/// Shortest round-trip decimal formatting for CSV cells.
std::string format_double(double v);

} // namespace flowlab

#endif
