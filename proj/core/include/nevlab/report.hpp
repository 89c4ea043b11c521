#pragma once

#include <string>
#include <vector>

#include "nevlab/lemma_lab.hpp"

namespace nevlab {

// Deterministic JSON for a LemmaReport.  Field order is fixed; numbers are
// serialized losslessly (shortest round-trip form).  `timestamp` and
// `runtime_ms` are the only volatile fields.
std::string report_to_json(const LemmaReport& report, const std::string& timestamp);

// Inverse of report_to_json (the timestamp is metadata, not report state).
LemmaReport report_from_json(const std::string& json_text);

// Exact (bitwise on doubles) equality of all non-volatile fields.
bool report_equal(const LemmaReport& a, const LemmaReport& b);

// CSV of raw samples, fixed columns: sigma,t,value,bound,margin.
std::string report_to_csv(const LemmaReport& report);

// Drops the volatile fields from a serialized report, for byte comparisons.
std::string strip_volatile_fields(const std::string& json_text);

enum class ReportFormat { Json, Csv, Both };

struct EmitConfig {
  std::string out_dir = ".";
  ReportFormat format = ReportFormat::Json;
  std::string stamp;  // filename stamp + JSON timestamp; empty = current time
};

// Writes <lemma_id>-<stamp>.json (and .csv) atomically (temp file + rename).
// Returns the paths written.  IO failures raise IoError.
std::vector<std::string> emit_report(const LemmaReport& report, const EmitConfig& cfg);

// Current UTC time as a filename-safe stamp (YYYYMMDDTHHMMSSZ).
std::string current_stamp();

}  // namespace nevlab
