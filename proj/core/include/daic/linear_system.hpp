#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "daic/graph.hpp"
#include "daic/rng.hpp"

namespace daic {

// Sparse n x n system A x = b with 1-based row/column indices.
struct LinearSystem {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  std::size_t n = 0;
  std::vector<Entry> entries;
  std::vector<double> b;

  double diagonal(std::size_t row) const;
};

// Triple file: `row col value` per line. Lines starting with '%' are comments;
// a `%%MatrixMarket` banner means the first data line is `rows cols nnz`.
// Repeated (row, col) pairs are a ParseError.
std::vector<LinearSystem::Entry> read_triples(std::istream& in);
// One real per line.
std::vector<double> read_vector(std::istream& in);

// n is taken from b; any entry outside [1, n] is a ConfigError.
LinearSystem make_system(std::vector<LinearSystem::Entry> entries, std::vector<double> b);
LinearSystem load_system(const std::filesystem::path& matrix, const std::filesystem::path& rhs);

// Throws ConfigError naming the row if some A_jj is zero.
void validate(const LinearSystem& sys);

// Unknown j becomes vertex j; every nonzero A_ji with i != j becomes the edge
// i->j with weight -A_ji / A_jj.
Graph jacobi_to_graph(const LinearSystem& sys);

// Strictly row-diagonally-dominant system for tests and tools: each
// off-diagonal entry is present with probability `density` and uniform in
// [-1, 1]; A_jj = (1 + margin) * Σ|A_ji| + U(0.5, 1.5); b uniform in [-10, 10].
LinearSystem random_dominant_system(std::size_t n, double density, Rng& rng, double margin = 0.5);

}  // namespace daic
