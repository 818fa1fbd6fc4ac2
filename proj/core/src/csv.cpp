#include "hypershape/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypershape/errors.hpp"

namespace hypershape {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        const std::string f = trim(field);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) return false;
        out.push_back(v);
    }
    return !out.empty();
}

std::vector<Eigen::MatrixXd> read_blocks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open file");

    std::vector<Eigen::MatrixXd> figures;
    std::vector<std::vector<double>> block;
    std::size_t cols = 0;
    int block_first_line = 0;
    bool seen_content = false;

    const auto flush_block = [&](int line_no) {
        if (block.empty()) return;
        Eigen::MatrixXd m(static_cast<Eigen::Index>(block.size()),
                          static_cast<Eigen::Index>(cols));
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = block[i][j];
        if (!figures.empty() && (figures.front().rows() != m.rows()))
            throw io_error(path + ":" + std::to_string(block_first_line) +
                           ": figure has a different row count than the first figure");
        figures.push_back(std::move(m));
        block.clear();
        (void)line_no;
    };

    std::string line;
    std::vector<double> row;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) {
            flush_block(line_no);
            continue;
        }
        if (!parse_row(t, row)) {
            // One non-numeric line is tolerated as a header at the top.
            if (!seen_content) continue;
            throw io_error(path + ":" + std::to_string(line_no) + ": malformed numeric row '" +
                           t + "'");
        }
        seen_content = true;
        if (block.empty()) {
            block_first_line = line_no;
            if (figures.empty()) cols = row.size();
        }
        if (row.size() != cols)
            throw io_error(path + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(cols) + " columns, got " + std::to_string(row.size()));
        block.push_back(row);
    }
    flush_block(line_no + 1);
    if (figures.empty()) throw io_error(path + ": no numeric data found");
    return figures;
}

} // namespace

std::vector<Eigen::MatrixXd> read_figures_csv(const std::string& path) {
    return read_blocks(path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto blocks = read_blocks(path);
    if (blocks.size() != 1)
        throw io_error(path + ": expected a single matrix, found " +
                       std::to_string(blocks.size()) + " blocks");
    return blocks.front();
}

void write_figures_csv(const std::string& path, const std::vector<Eigen::MatrixXd>& figures) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open file for writing");
    char buf[64];
    for (std::size_t f = 0; f < figures.size(); ++f) {
        if (f > 0) out << "\n";
        const auto& m = figures[f];
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
                if (j > 0) out << ",";
                out << buf;
            }
            out << "\n";
        }
    }
    if (!out) throw io_error(path + ": write failed");
}

} // namespace hypershape
