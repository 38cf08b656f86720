#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace coneproj {

/// Plain-text CSV matrix format shared by the CLI: one row per coordinate,
/// one comma-separated column per generator, no header row. Vectors are
/// single-column files. Parse problems throw InputError naming the source.

Eigen::MatrixXd parse_matrix_csv(std::istream& in, const std::string& source_name);
Eigen::VectorXd parse_vector_csv(std::istream& in, const std::string& source_name);

Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v);

std::string format_matrix_csv(const Eigen::MatrixXd& m);
std::string format_vector_csv(const Eigen::VectorXd& v);

} // namespace coneproj
