#include "coneproj/matrix_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "coneproj/errors.hpp"

namespace coneproj {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_number(const std::string& cell, const std::string& source, std::size_t line_no) {
    const std::string t = trim(cell);
    if (t.empty()) {
        throw InputError(source + ":" + std::to_string(line_no) + ": empty field");
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) {
            throw std::invalid_argument(t);
        }
        return v;
    } catch (const std::exception&) {
        throw InputError(source + ":" + std::to_string(line_no) + ": not a number: '" + t + "'");
    }
}

std::vector<std::vector<double>> parse_rows(std::istream& in, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(parse_number(cell, source, line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InputError(source + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, got " +
                             std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InputError(source + ": no data rows");
    }
    return rows;
}

std::string format_double(double v) {
    if (v == 0.0) {
        return "0";  // avoid "-0"
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Eigen::MatrixXd parse_matrix_csv(std::istream& in, const std::string& source_name) {
    const auto rows = parse_rows(in, source_name);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

Eigen::VectorXd parse_vector_csv(std::istream& in, const std::string& source_name) {
    const Eigen::MatrixXd m = parse_matrix_csv(in, source_name);
    if (m.cols() != 1) {
        throw InputError(source_name + ": expected a single-column vector, got " +
                         std::to_string(m.cols()) + " columns");
    }
    return m.col(0);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError(path + ": cannot open");
    }
    return parse_matrix_csv(in, path);
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError(path + ": cannot open");
    }
    return parse_vector_csv(in, path);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out << ',';
            }
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index r = 0; r < v.size(); ++r) {
        out << format_double(v(r)) << '\n';
    }
}

std::string format_matrix_csv(const Eigen::MatrixXd& m) {
    std::ostringstream out;
    write_matrix_csv(out, m);
    return out.str();
}

std::string format_vector_csv(const Eigen::VectorXd& v) {
    std::ostringstream out;
    write_vector_csv(out, v);
    return out.str();
}

} // namespace coneproj
