#include "pdc/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "pdc/errors.hpp"

namespace pdc {

const char* const kCsvHeader =
    "r,B,mu,K_eff,eta,dark,detector,fidelity,herald_prob,status";

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ConfigError("malformed number '" + std::string(token) + "'");
  return v;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_cell(std::string_view token) {
  if (token.empty()) return std::nullopt;
  return parse_double(token);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void write_csv(std::ostream& os, const CsvDocument& doc) {
  for (const auto& m : doc.metadata) os << "# " << m << '\n';
  os << kCsvHeader << '\n';
  for (const auto& row : doc.rows) {
    os << cell(row.r) << ',' << cell(row.gain) << ',' << cell(row.mu) << ','
       << cell(row.schmidt_k) << ',' << cell(row.eta) << ',' << cell(row.dark)
       << ',' << row.detector << ',' << cell(row.fidelity) << ','
       << cell(row.herald_prob) << ',' << row.status << '\n';
  }
}

std::string to_csv_string(const CsvDocument& doc) {
  std::ostringstream os;
  write_csv(os, doc);
  return os.str();
}

CsvDocument read_csv(std::istream& is) {
  CsvDocument doc;
  std::string line;
  bool saw_header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t skip = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      doc.metadata.push_back(line.substr(skip));
      continue;
    }
    if (!saw_header) {
      if (line != kCsvHeader)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected header '" + kCsvHeader + "'");
      saw_header = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != 10)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 10 fields, got " +
                        std::to_string(fields.size()));
    SweepRow row;
    try {
      row.r = parse_cell(fields[0]);
      row.gain = parse_cell(fields[1]);
      row.mu = parse_cell(fields[2]);
      row.schmidt_k = parse_cell(fields[3]);
      row.eta = parse_cell(fields[4]);
      row.dark = parse_cell(fields[5]);
      row.detector = std::string(fields[6]);
      row.fidelity = parse_cell(fields[7]);
      row.herald_prob = parse_cell(fields[8]);
      row.status = std::string(fields[9]);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
    doc.rows.push_back(std::move(row));
  }
  if (!saw_header) throw ConfigError("missing CSV header");
  return doc;
}

CsvDocument read_csv_string(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

}  // namespace pdc
