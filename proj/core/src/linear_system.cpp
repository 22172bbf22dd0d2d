#include "daic/linear_system.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "daic/errors.hpp"
#include "daic/rng.hpp"

namespace daic {

namespace {

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '%') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

template <class T>
T parse_token(std::istringstream& in, std::size_t line_number, const char* what) {
  std::string token;
  if (!(in >> token)) throw ParseError(line_number, std::string("missing ") + what);
  T out{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_number, std::string("bad ") + what + " '" + token + "'");
  }
  return out;
}

}  // namespace

double LinearSystem::diagonal(std::size_t row) const {
  for (const Entry& e : entries) {
    if (e.row == row && e.col == row) return e.value;
  }
  return 0.0;
}

std::vector<LinearSystem::Entry> read_triples(std::istream& in) {
  std::vector<LinearSystem::Entry> out;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::string line;
  std::size_t line_number = 0;
  bool need_size_line = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1 && line.rfind("%%MatrixMarket", 0) == 0) {
      need_size_line = true;
      continue;
    }
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (need_size_line) {
      parse_token<std::size_t>(fields, line_number, "row count");
      parse_token<std::size_t>(fields, line_number, "column count");
      parse_token<std::size_t>(fields, line_number, "entry count");
      need_size_line = false;
      continue;
    }
    LinearSystem::Entry e{};
    e.row = parse_token<std::size_t>(fields, line_number, "row index");
    e.col = parse_token<std::size_t>(fields, line_number, "column index");
    e.value = parse_token<double>(fields, line_number, "matrix value");
    if (e.row == 0 || e.col == 0) throw ParseError(line_number, "indices are 1-based");
    if (!std::isfinite(e.value)) throw ParseError(line_number, "non-finite matrix value");
    if (!seen.emplace(e.row, e.col).second) {
      throw ParseError(line_number, "entry (" + std::to_string(e.row) + ", " +
                                        std::to_string(e.col) + ") given twice");
    }
    out.push_back(e);
  }
  return out;
}

std::vector<double> read_vector(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    const double value = parse_token<double>(fields, line_number, "vector value");
    if (!std::isfinite(value)) throw ParseError(line_number, "non-finite vector value");
    out.push_back(value);
  }
  return out;
}

LinearSystem make_system(std::vector<LinearSystem::Entry> entries, std::vector<double> b) {
  LinearSystem sys;
  sys.n = b.size();
  for (const auto& e : entries) {
    if (e.row < 1 || e.row > sys.n || e.col < 1 || e.col > sys.n) {
      throw ConfigError("matrix entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                        ") outside a " + std::to_string(sys.n) + "-unknown system");
    }
  }
  sys.entries = std::move(entries);
  sys.b = std::move(b);
  return sys;
}

LinearSystem load_system(const std::filesystem::path& matrix, const std::filesystem::path& rhs) {
  std::ifstream a(matrix);
  if (!a) throw Error("cannot open matrix file " + matrix.string());
  std::ifstream b(rhs);
  if (!b) throw Error("cannot open vector file " + rhs.string());
  return make_system(read_triples(a), read_vector(b));
}

void validate(const LinearSystem& sys) {
  if (sys.n == 0) throw ConfigError("empty linear system");
  std::vector<bool> has_diagonal(sys.n + 1, false);
  for (const auto& e : sys.entries) {
    if (e.row == e.col && e.value != 0.0) has_diagonal[e.row] = true;
  }
  for (std::size_t j = 1; j <= sys.n; ++j) {
    if (!has_diagonal[j]) throw ConfigError("zero diagonal in row " + std::to_string(j));
  }
}

Graph jacobi_to_graph(const LinearSystem& sys) {
  validate(sys);
  std::vector<double> diag(sys.n + 1, 0.0);
  for (const auto& e : sys.entries) {
    if (e.row == e.col) diag[e.row] = e.value;
  }
  GraphBuilder builder;
  for (std::size_t j = 1; j <= sys.n; ++j) builder.add_vertex(j);
  for (const auto& e : sys.entries) {
    if (e.row == e.col || e.value == 0.0) continue;
    // A_ji lives at (row j, col i) and feeds unknown j from unknown i.
    builder.add_edge(e.col, e.row, -e.value / diag[e.row]);
  }
  return std::move(builder).build();
}

LinearSystem random_dominant_system(std::size_t n, double density, Rng& rng, double margin) {
  LinearSystem sys;
  sys.n = n;
  for (std::size_t row = 1; row <= n; ++row) {
    double off = 0.0;
    for (std::size_t col = 1; col <= n; ++col) {
      if (col == row || rng.uniform01() >= density) continue;
      const double value = rng.uniform(-1.0, 1.0);
      if (value == 0.0) continue;
      sys.entries.push_back({row, col, value});
      off += std::abs(value);
    }
    sys.entries.push_back({row, row, off * (1.0 + margin) + rng.uniform(0.5, 1.5)});
    sys.b.push_back(rng.uniform(-10.0, 10.0));
  }
  return sys;
}

}  // namespace daic
