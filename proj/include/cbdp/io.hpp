#pragma once

// Text formats: kernel and parametrization JSON, integer matrix files, polynomial
// lists, and CSV for dense vertex-by-vertex matrices. Axes are 1-based in files.

#include <string>
#include <string_view>
#include <vector>

#include "cbdp/exact_linear.hpp"
#include "cbdp/kernel.hpp"
#include "cbdp/lattice.hpp"
#include "cbdp/parametrization.hpp"
#include "cbdp/spectral.hpp"

namespace cbdp {

/// {"shape":[2,1],"entries":[{"from":[0,0],"dir":1,"sign":1,"p":0.25}, ...]}.
/// Omitted edges are 0. Entries that leave the grid are kept in Kernel::stray.
Kernel parse_kernel(std::string_view json_text);
/// Same layout with p as "num/den" strings (plain JSON numbers are converted exactly).
ExactKernel parse_exact_kernel(std::string_view json_text);
std::string format_kernel(const Kernel& k);
std::string format_kernel(const ExactKernel& k);

/// {"shape":[…],"a":{"0,1":v},"W":{"k,h":v}} with k the 1-based axis.
Parametrization parse_parametrization(std::string_view json_text);
ExactParametrization parse_exact_parametrization(std::string_view json_text);
std::string format_parametrization(const Parametrization& p);
std::string format_parametrization(const ExactParametrization& p);

/// "rows cols" on the first line, then whitespace-separated integer rows.
std::string format_matrix(const ExactMatrix& m);
ExactMatrix parse_matrix(std::string_view text);
std::string format_lattice(const std::vector<LatticeElement>& elements, std::size_t cols);
std::vector<LatticeElement> parse_lattice(std::string_view text);

/// Header row of vertex labels, then one labelled row per source vertex.
std::string format_csv(const DenseMatrix& m, const Grid& grid);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace cbdp
