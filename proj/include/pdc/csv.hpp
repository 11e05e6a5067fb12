#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdc {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Strict parse of a full token; throws ConfigError on trailing garbage.
double parse_double(std::string_view token);

// One output row of the frontier CSV family. The column set is fixed so
// single-mode and multimode runs share a schema; fields that do not apply
// stay empty in the file and unset here.
struct SweepRow {
  std::optional<double> r;          // single-mode squeezing parameter
  std::optional<double> gain;       // multimode optical gain B
  std::optional<double> mu;         // Schmidt-profile decay
  std::optional<double> schmidt_k;  // effective mode number K
  std::optional<double> eta;
  std::optional<double> dark;
  std::string detector;
  std::optional<double> fidelity;
  std::optional<double> herald_prob;
  std::string status = "ok";
};

struct CsvDocument {
  std::vector<std::string> metadata;  // emitted as leading '#' comment lines
  std::vector<SweepRow> rows;
};

extern const char* const kCsvHeader;  // r,B,mu,K_eff,eta,dark,detector,fidelity,herald_prob,status

void write_csv(std::ostream& os, const CsvDocument& doc);
std::string to_csv_string(const CsvDocument& doc);

// Parses output of write_csv (and nothing fancier). Throws ConfigError on
// header mismatch or malformed rows.
CsvDocument read_csv(std::istream& is);
CsvDocument read_csv_string(const std::string& text);

}  // namespace pdc
