// ── urnlab/io.hpp ───────────────────────────────────────────────────────────
//
// Configuration input and tabular output.
//
// Urn configuration is a JSON object:
//
//   { "R": [[int, ...], ...],      square replacement matrix, row convention
//     "alpha": [int, ...] }        initial composition, same length
//
// Parse diagnostics carry the 1-based line of the offending byte and the
// field path, so a bad entry in a large config is findable.  CSV output uses
// a leading "# schema: <name>" comment line, a fixed header row, and %.17g
// for doubles (round-trip exact for a given build).
//
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

namespace detail {
inline int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}
}  // namespace detail

inline UrnSpec parse_urn_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(errc::parse_error,
          std::string("invalid JSON at line ") +
              std::to_string(detail::line_of_byte(text, e.byte)) + ": " +
              e.what());
  }
  require(j.is_object(), errc::parse_error, "top level must be a JSON object");
  require(j.contains("R"), errc::parse_error, "missing field \"R\"");
  require(j.contains("alpha"), errc::parse_error, "missing field \"alpha\"");
  const auto& jr = j["R"];
  require(jr.is_array() && !jr.empty(), errc::parse_error,
          "field \"R\" must be a non-empty array of rows");
  const int d = int(jr.size());
  std::vector<long long> R;
  R.reserve(std::size_t(d) * d);
  for (int c = 0; c < d; ++c) {
    const auto& row = jr[c];
    require(row.is_array() && int(row.size()) == d, errc::parse_error,
            "field \"R\"[" + std::to_string(c) + "] must be an array of " +
                std::to_string(d) + " integers");
    for (int i = 0; i < d; ++i) {
      require(row[i].is_number_integer(), errc::parse_error,
              "field \"R\"[" + std::to_string(c) + "][" + std::to_string(i) +
                  "] must be an integer");
      R.push_back(row[i].get<long long>());
    }
  }
  const auto& ja = j["alpha"];
  require(ja.is_array() && int(ja.size()) == d, errc::parse_error,
          "field \"alpha\" must be an array of " + std::to_string(d) +
              " integers");
  std::vector<long long> alpha;
  for (int i = 0; i < d; ++i) {
    require(ja[i].is_number_integer(), errc::parse_error,
            "field \"alpha\"[" + std::to_string(i) + "] must be an integer");
    alpha.push_back(ja[i].get<long long>());
  }
  try {
    return make_urn(d, std::move(R), std::move(alpha));
  } catch (const UrnError& e) {
    raise(errc::parse_error, std::string("configuration rejected: ") + e.what());
  }
}

inline UrnSpec load_urn_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), errc::parse_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_urn_config(buf.str());
}

// ── CSV helpers ─────────────────────────────────────────────────────────────

// All floating output goes through one formatter so every writer agrees.
inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& schema,
            const std::vector<std::string>& header)
      : out_(out) {
    out_ << "# schema: " << schema << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
      out_ << (i ? "," : "") << header[i];
    out_ << "\n";
  }

  void field(long long v) { sep(); out_ << v; }
  void field(int v) { sep(); out_ << v; }
  void field(double v) { sep(); out_ << fmt_g17(v); }
  void field(const std::string& v) { sep(); out_ << v; }
  void end_row() { out_ << "\n"; first_ = true; }

 private:
  void sep() {
    if (!first_) out_ << ",";
    first_ = false;
  }
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace urnlab
