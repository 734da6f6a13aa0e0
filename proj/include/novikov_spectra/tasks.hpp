#pragma once

#include "novikov_spectra/suites.hpp"

#include <string>
#include <vector>

namespace spectra::tasks {

enum class Task { Spectra, Axioms, Appendix, Oracle };

Task parse_task(const std::string& name);
const char* to_string(Task t);

/// Engine against oracle on every shipped class of a complex with at most
/// `cap` orbits.
suites::SuiteResult oracle_fixtures(const io::Workspace& ws);

std::vector<suites::SuiteResult> run_task(const io::Workspace& ws, Task t);

/// Compiler, library versions and build type; no clock readings.
io::Json environment_stamp();

/// Deterministic report for a task run. summary.status is PASS or FAIL.
io::Json report(const io::Workspace& ws, Task t, const std::vector<suites::SuiteResult>& results);

}  // namespace spectra::tasks
