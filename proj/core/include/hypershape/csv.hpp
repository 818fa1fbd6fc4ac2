#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hypershape {

/// Reads landmark figures from a plain CSV file: numeric rows, one optional
/// header line at the top, blank lines separating figures. All figures must
/// share the row and column counts. Throws io_error with a line-numbered
/// message on malformed input.
std::vector<Eigen::MatrixXd> read_figures_csv(const std::string& path);

/// Reads a single numeric matrix (one block, optional header line).
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Writes figures as CSV blocks separated by blank lines, full double
/// precision, deterministic byte-for-byte.
void write_figures_csv(const std::string& path, const std::vector<Eigen::MatrixXd>& figures);

} // namespace hypershape
