#pragma once

#include <iosfwd>
#include <string>

#include "borelreg/chains.hpp"

namespace borelreg {

// Chain file format:
//   {"degree": 3, "terms": [{"coeff": 1, "tuple": [matrix, ...]}, ...]}
// matrix = array of rows, entry = [re, im].
GroupChain chain_from_json(const std::string& text);        // throws ParseError
std::string chain_to_json(const GroupChain& chain);         // exact round-trip
GroupChain load_chain(const std::string& path);             // throws ParseError

// Reports. The table is a projection of the JSON document, which carries
// every field.
std::string report_to_json(const PhiReport& report, const ChainConfig& cfg);
void print_report_table(std::ostream& os, const PhiReport& report, const ChainConfig& cfg);

} // namespace borelreg
