#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/sparsemat.hpp"

namespace blocksolve {

// Matrix Market "coordinate integer general". Writers emit row-major sorted
// coordinates; readers accept any order and comment lines.
void write_matrix_market(std::ostream& out, const SparseIntMatrix& A);
SparseIntMatrix read_matrix_market(std::istream& in);

// One integer per line.
void write_vector(std::ostream& out, std::span<const BigInt> b);
std::vector<BigInt> read_vector(std::istream& in);

// One "numerator/denominator" line per entry, each in lowest terms.
void write_solution(std::ostream& out, const RationalVector& x);
RationalVector read_solution(std::istream& in);

void write_matrix_market(const std::filesystem::path& path, const SparseIntMatrix& A);
SparseIntMatrix read_matrix_market(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, std::span<const BigInt> b);
std::vector<BigInt> read_vector(const std::filesystem::path& path);
void write_solution(const std::filesystem::path& path, const RationalVector& x);
RationalVector read_solution(const std::filesystem::path& path);

}  // namespace blocksolve
