#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skew {

// Command line front end; args excludes the program name. Writes JSON to `out` (or --output) and
// diagnostics to `err`. Exit codes: 0 success or pass, 1 counterexample, failed verification or a
// mathematical error (with JSON describing it), 2 usage or format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// JSON schemas for every exchanged format, as printed by --schema.
const char* json_schema_text();

}  // namespace skew
