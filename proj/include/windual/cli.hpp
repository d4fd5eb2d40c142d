#pragma once

#include "windual/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace windual {

// Renders a suite report as "json" (canonical serialization), "text" (a
// fixed-width table whose first line is "<suite> <passed>/<trials> PASS|FAIL"),
// or "svg-summary" (a static pass/fail bar chart). Unknown formats are usage
// errors. The result always ends with a newline.
std::string render_report(const SuiteReport& report, const std::string& format);

// Full command dispatch; `args` excludes the program name. Results go to
// `out` as JSON (or the requested report format); errors go to `err` as
// {"error": "..."}. Returns 0 on success, 1 on domain errors, 2 on usage
// errors (bad flags, malformed JSON, unknown names).
//
// Inputs passed as flag values may be inline JSON, "@path" to read a file,
// or "-" to read `in` to the end.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace windual
