#pragma once

#include "twistbetti/geometry.hpp"
#include "twistbetti/harness.hpp"
#include "twistbetti/localsys.hpp"

#include <string>

namespace twistbetti {

// JSON file formats. Rationals are always strings ("-3", "5/2").
//
// Arrangement:  {"dim": n, "hyperplanes": [{"label": "H1", "normal": ["1","0"], "offset": "0"}, ...]}
// Local system: {"field": {"kind": "Q"} | {"kind": "Fp", "p": 7}, "rank": r,
//                "monodromy": [["a11","a12","a21","a22"], ...]}   (row-major, one per hyperplane)
//
// Parse functions throw ParseError on malformed JSON or rationals, naming the
// offending row; semantic problems raise ValidationError.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

RawArrangement parse_arrangement_json(const std::string& text);
Arrangement load_arrangement(const std::string& path);
std::string arrangement_to_json(const Arrangement& a);

LocalSystem parse_local_system_json(const std::string& text);
LocalSystem load_local_system(const std::string& path);
std::string local_system_to_json(const LocalSystem& l);

/// True when the document looks like a local-system file rather than an arrangement.
bool is_local_system_json(const std::string& text);

/// {"reports": [...], "summary": {"total", "passed", "failed", "not_applicable", "seed"}}.
/// Byte-identical for identical results.
std::string report_to_json(const SuiteResult& result);

} // namespace twistbetti
