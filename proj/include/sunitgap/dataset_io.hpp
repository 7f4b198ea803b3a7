#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sunitgap/bounds.hpp"
#include "sunitgap/search.hpp"

namespace sunitgap::io {

using HeaderEcho = std::vector<std::pair<std::string, std::string>>;

// JSON-lines dataset: line 1 is a header object carrying the tool version
// and the full effective config; each further line is one record with the
// fixed key order x, a, n_value, delta, spart_value, cofactor, gpf, ratio.
// Integers are serialized as decimal strings so round-trips are lossless at
// any magnitude.  Writes are atomic (temp file + rename).
void write_dataset_jsonl(const std::string& path, const search::Dataset& ds, const HeaderEcho& echo);

// Re-parse a dataset file.  Malformed lines raise parse_error with the
// 1-based line number.
search::Dataset read_dataset_jsonl(const std::string& path);

// One-row CSV digest of a dataset, config echoed in '#' header lines.
void write_summary_csv(const std::string& path, const search::Dataset& ds, const HeaderEcho& echo);

// Joined per-record report: ratio, needed exponent, greatest-prime-factor
// shape columns; fit results and the binding record land in the header.
void write_report_csv(const std::string& path, const search::Dataset& ds,
                      const bounds::EmpiricalFit* fit, const bounds::GpfCheckReport* gpf,
                      const HeaderEcho& echo);

// Human summary block as printed to stdout after a run.
std::string summary_block(const search::Dataset& ds);

} // namespace sunitgap::io
