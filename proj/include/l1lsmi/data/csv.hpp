#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace l1lsmi::data {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

inline std::optional<double> parse_double(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) return std::nullopt;
    return v;
}

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace detail

/// Parses comma-separated rows; the last column is the target. A first row
/// containing any non-numeric cell is treated as a header. Classification
/// targets are remapped to 1..C in order of first appearance.
inline Dataset parse_csv(std::istream& in, Task task) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line);
        std::vector<double> values;
        values.reserve(cells.size());
        bool numeric = true;
        std::size_t bad_cell = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = detail::parse_double(cells[c]);
            if (!v) {
                numeric = false;
                bad_cell = c;
                break;
            }
            values.push_back(*v);
        }
        if (first) {
            first = false;
            width = cells.size();
            if (!numeric) continue;  // header
        }
        if (cells.size() != width)
            throw ParseError(line_no, "expected " + std::to_string(width) + " cells, found " +
                                          std::to_string(cells.size()));
        if (!numeric)
            throw ParseError(line_no, "non-numeric cell '" + std::string(cells[bad_cell]) + "' in column " +
                                          std::to_string(bad_cell + 1));
        for (const double v : values)
            if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw std::runtime_error("CSV contains no data rows");
    if (width < 2) throw std::runtime_error("CSV needs at least one feature column and a target column");

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = static_cast<Eigen::Index>(width - 1);
    Eigen::MatrixXd x(m, n);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m; ++j) x(j, i) = r[static_cast<std::size_t>(j)];
        y[i] = r.back();
    }
    if (task.is_classification()) {
        std::map<double, int> remap;
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto it = remap.find(y[i]);
            if (it == remap.end()) {
                const int label = static_cast<int>(remap.size()) + 1;
                remap.emplace(y[i], label);
                y[i] = label;
            } else {
                y[i] = it->second;
            }
        }
        task.classes = static_cast<int>(remap.size());
    }
    return Dataset(std::move(x), std::move(y), task);
}

inline Dataset load_csv(const std::string& path, Task task) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_csv(in, task);
}

/// Header "x1,...,xm,y" followed by one row per sample.
inline void write_csv(std::ostream& out, const Dataset& data) {
    for (int j = 0; j < data.m(); ++j) out << 'x' << (j + 1) << ',';
    out << "y\n";
    for (int i = 0; i < data.n(); ++i) {
        for (int j = 0; j < data.m(); ++j) out << detail::format_double(data.features()(j, i)) << ',';
        out << detail::format_double(data.target()[i]) << '\n';
    }
}

inline void write_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_csv(out, data);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace l1lsmi::data
