#pragma once

// File formats: CLSpectrum JSON input, spectrum CSV/JSON output and input,
// trajectory CSV/JSON output. Reals are written with 17 significant digits.

#include <json.hpp>  // nlohmann::json, vendored

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "screwsr/errors.hpp"
#include "screwsr/geodesic.hpp"
#include "screwsr/spectrum.hpp"

namespace screwsr::io {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// CLSpectrum

/// Accepts a JSON array of {"ell", "theta"} objects, or an object
/// {"name": ..., "entries": [...]}. Errors name the offending index.
inline CLSpectrum parse_cl_spectrum(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("complex length spectrum: invalid JSON: ") + e.what());
  }
  CLSpectrum out;
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) throw ParseError("complex length spectrum: \"name\" must be a string");
      out.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("entries")) throw ParseError("complex length spectrum: object form needs an \"entries\" array");
    list = &doc["entries"];
  }
  if (!list->is_array()) throw ParseError("complex length spectrum: expected an array of {ell, theta} objects");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& item = (*list)[i];
    const std::string where = "complex length spectrum entry " + std::to_string(i) + ": ";
    if (!item.is_object()) throw ParseError(where + "not an object");
    for (const char* key : {"ell", "theta"}) {
      if (!item.contains(key) || !item[key].is_number()) {
        throw ParseError(where + "\"" + key + "\" missing or not a number");
      }
    }
    try {
      out.entries.emplace_back(item["ell"].get<double>(), item["theta"].get<double>());
    } catch (const PreconditionError& e) {
      throw ParseError(where + e.what());
    }
  }
  return out;
}

inline CLSpectrum read_cl_spectrum(const std::string& path) { return parse_cl_spectrum(read_file(path)); }

// ---------------------------------------------------------------------------
// Spectrum output

struct SpectrumMetadata {
  SpaceForm k = SpaceForm::flat;
  double lambda = 0.0;
  double cutoff = 0.0;
  long m_max = 0;
  double rational_tol = 0.0;
  long max_denominator = 0;

  static SpectrumMetadata of(const ScrewConfig& cfg, const EnumerationBudget& b) {
    return {cfg.k(), cfg.lambda(), b.cutoff, b.m_max, b.rational_tol, b.max_denominator};
  }
};

inline constexpr std::string_view kSpectrumColumns = "length,source,ell,theta,q,p,n,m,r,c,mu,kappa,tau";

/// One output row. Absent fields are empty in CSV and null in JSON.
struct SpectrumRow {
  double length = 0.0;
  std::string source;
  std::optional<double> ell, theta;
  std::optional<long> q, p, n, m;
  std::optional<double> r, c, mu, kappa, tau;
};

inline SpectrumRow to_row(const SpectrumEntry& e) {
  SpectrumRow row;
  row.length = e.length;
  row.source = std::string(to_string(e.source()));
  std::visit(
      [&row](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, CircleWitness>) {
          row.n = w.n;
          row.m = w.m;
          row.r = w.r;
        } else if constexpr (std::is_same_v<W, FiberWitness>) {
          row.ell = w.cl.ell();
          row.theta = w.cl.theta();
          row.n = w.n;
          row.m = w.m;
        } else {
          row.ell = w.cl.ell();
          row.theta = w.cl.theta();
          row.q = w.q;
          row.p = w.p;
          row.n = w.n;
          row.m = w.m;
          row.r = w.r;
          row.c = w.c;
          row.mu = w.mu;
          row.kappa = w.kappa;
          row.tau = w.tau;
        }
      },
      e.witness);
  return row;
}

namespace detail {

inline std::string cell(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }
inline std::string cell(const std::optional<long>& x) { return x ? std::to_string(*x) : std::string(); }
inline std::string json_value(const std::optional<double>& x) { return x ? format_real(*x) : "null"; }
inline std::string json_value(const std::optional<long>& x) { return x ? std::to_string(*x) : "null"; }

}  // namespace detail

/// Metadata as `# key=value` lines, a header row, then one row per witness.
inline void write_spectrum_csv(std::ostream& os, const SpectrumMetadata& meta,
                               const std::vector<SpectrumEntry>& entries) {
  os << "# k=" << curvature(meta.k) << '\n'
     << "# lambda=" << format_real(meta.lambda) << '\n'
     << "# cutoff=" << format_real(meta.cutoff) << '\n'
     << "# m_max=" << meta.m_max << '\n'
     << "# rational_tol=" << format_real(meta.rational_tol) << '\n'
     << "# max_denominator=" << meta.max_denominator << '\n'
     << kSpectrumColumns << '\n';
  using detail::cell;
  for (const auto& e : entries) {
    const SpectrumRow r = to_row(e);
    os << format_real(r.length) << ',' << r.source << ',' << cell(r.ell) << ',' << cell(r.theta) << ','
       << cell(r.q) << ',' << cell(r.p) << ',' << cell(r.n) << ',' << cell(r.m) << ',' << cell(r.r) << ','
       << cell(r.c) << ',' << cell(r.mu) << ',' << cell(r.kappa) << ',' << cell(r.tau) << '\n';
  }
}

// Written by hand rather than through nlohmann::json so that reals keep 17
// significant digits.
inline void write_spectrum_json(std::ostream& os, const SpectrumMetadata& meta,
                                const std::vector<SpectrumEntry>& entries) {
  os << "{\n  \"metadata\": {\"k\": " << curvature(meta.k) << ", \"lambda\": " << format_real(meta.lambda)
     << ", \"cutoff\": " << format_real(meta.cutoff) << ", \"m_max\": " << meta.m_max
     << ", \"rational_tol\": " << format_real(meta.rational_tol)
     << ", \"max_denominator\": " << meta.max_denominator << "},\n  \"entries\": [";
  using detail::json_value;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SpectrumRow r = to_row(entries[i]);
    os << (i == 0 ? "\n" : ",\n") << "    {\"length\": " << format_real(r.length) << ", \"source\": \"" << r.source
       << "\", \"ell\": " << json_value(r.ell) << ", \"theta\": " << json_value(r.theta)
       << ", \"q\": " << json_value(r.q) << ", \"p\": " << json_value(r.p) << ", \"n\": " << json_value(r.n)
       << ", \"m\": " << json_value(r.m) << ", \"r\": " << json_value(r.r) << ", \"c\": " << json_value(r.c)
       << ", \"mu\": " << json_value(r.mu) << ", \"kappa\": " << json_value(r.kappa)
       << ", \"tau\": " << json_value(r.tau) << '}';
  }
  os << (entries.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

// ---------------------------------------------------------------------------
// Spectrum input

namespace detail {

inline double parse_real(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ParseError(where + ": not a number: '" + s + "'");
  }
}

inline long parse_integer(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long x = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ParseError(where + ": not an integer: '" + s + "'");
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<SpectrumRow> parse_spectrum_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<SpectrumRow> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kSpectrumColumns && line != std::string(kSpectrumColumns) + "\r") {
        throw ParseError("spectrum CSV: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_line(line);
    const std::string where = "spectrum CSV line " + std::to_string(line_no);
    if (cells.size() != 13) throw ParseError(where + ": expected 13 columns, got " + std::to_string(cells.size()));
    auto real = [&](std::size_t i) -> std::optional<double> {
      if (cells[i].empty()) return std::nullopt;
      return parse_real(cells[i], where);
    };
    auto integer = [&](std::size_t i) -> std::optional<long> {
      if (cells[i].empty()) return std::nullopt;
      return parse_integer(cells[i], where);
    };
    SpectrumRow r;
    r.length = parse_real(cells[0], where);
    r.source = cells[1];
    r.ell = real(2);
    r.theta = real(3);
    r.q = integer(4);
    r.p = integer(5);
    r.n = integer(6);
    r.m = integer(7);
    r.r = real(8);
    r.c = real(9);
    r.mu = real(10);
    r.kappa = real(11);
    r.tau = real(12);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("spectrum CSV: missing header row");
  return rows;
}

inline std::vector<SpectrumRow> parse_spectrum_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("spectrum JSON: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("spectrum JSON: expected an object with an \"entries\" array");
  }
  std::vector<SpectrumRow> rows;
  const auto& list = doc["entries"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& item = list[i];
    const std::string where = "spectrum JSON entry " + std::to_string(i);
    if (!item.is_object() || !item.contains("length") || !item["length"].is_number()) {
      throw ParseError(where + ": missing numeric \"length\"");
    }
    auto real = [&](const char* key) -> std::optional<double> {
      if (!item.contains(key) || item[key].is_null()) return std::nullopt;
      if (!item[key].is_number()) throw ParseError(where + ": \"" + key + "\" is not a number");
      return item[key].get<double>();
    };
    auto integer = [&](const char* key) -> std::optional<long> {
      if (!item.contains(key) || item[key].is_null()) return std::nullopt;
      if (!item[key].is_number_integer()) throw ParseError(where + ": \"" + key + "\" is not an integer");
      return item[key].get<long>();
    };
    SpectrumRow r;
    r.length = item["length"].get<double>();
    if (item.contains("source") && item["source"].is_string()) r.source = item["source"].get<std::string>();
    r.ell = real("ell");
    r.theta = real("theta");
    r.q = integer("q");
    r.p = integer("p");
    r.n = integer("n");
    r.m = integer("m");
    r.r = real("r");
    r.c = real("c");
    r.mu = real("mu");
    r.kappa = real("kappa");
    r.tau = real("tau");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

/// Parses spectrum output in either format (JSON if the first non-blank
/// character is '{').
inline std::vector<SpectrumRow> parse_spectrum(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return detail::parse_spectrum_json(text);
  return detail::parse_spectrum_csv(text);
}

inline std::vector<SpectrumRow> read_spectrum(const std::string& path) { return parse_spectrum(read_file(path)); }

/// Distinct lengths of a parsed spectrum (rows merged like full_spectrum).
inline std::vector<double> row_lengths(const std::vector<SpectrumRow>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.length);
  return distinct_lengths(std::move(out));
}

// ---------------------------------------------------------------------------
// Trajectories

/// Columns t, p0..p3, then the four ambient coordinates of b1, b2, b3.
inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
  os << "t,p0,p1,p2,p3";
  for (int i = 1; i <= 3; ++i) {
    for (int j = 0; j < 4; ++j) os << ",b" << i << '_' << j;
  }
  os << '\n';
  for (const auto& s : samples) {
    os << format_real(s.t);
    for (int col = 0; col < 4; ++col) {
      for (int row = 0; row < 4; ++row) os << ',' << format_real(s.element(row, col));
    }
    os << '\n';
  }
}

/// {"samples": [{"t": ..., "matrix": [16 reals, row-major]}, ...]}.
inline void write_trajectory_json(std::ostream& os, const std::vector<TrajectorySample>& samples) {
  os << "{\n  \"samples\": [";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n") << "    {\"t\": " << format_real(samples[i].t) << ", \"matrix\": [";
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) {
        os << (row + col == 0 ? "" : ", ") << format_real(samples[i].element(row, col));
      }
    }
    os << "]}";
  }
  os << (samples.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace screwsr::io
