#include "riskfilt/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace riskfilt {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& context) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    double v = 0.0;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{}) {
        throw ValidationError("BadNumber", "cannot parse number '" + s + "' in " + context);
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

bool data_line(const std::string& line) {
    return !line.empty() && line[0] != '#';
}

}  // namespace

std::vector<std::pair<double, double>> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("MissingFile", "cannot open samples file '" + path + "'");
    }
    std::vector<std::pair<double, double>> out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!data_line(line)) continue;
        if (!header_seen) {  // header row required
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw ValidationError("BadCsv", "expected two columns t,value in '" + path + "'");
        }
        out.emplace_back(parse_double(fields[0], path), parse_double(fields[1], path));
    }
    return out;
}

std::vector<double> samples_on_grid(const std::string& path, const TimeGrid& grid) {
    const auto rows = read_samples_csv(path);
    if (static_cast<int>(rows.size()) != grid.N + 1) {
        throw ValidationError("BadCsv", "samples file '" + path + "' has " +
                                            std::to_string(rows.size()) + " rows, expected " +
                                            std::to_string(grid.N + 1) + " grid nodes");
    }
    std::vector<double> values(rows.size());
    const double tol = 0.25 * grid.dt();
    for (int i = 0; i <= grid.N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (std::abs(rows[k].first - grid.node(i)) > tol) {
            throw ValidationError("BadCsv", "samples file '" + path + "' node " + std::to_string(i) +
                                                " does not match the grid");
        }
        values[k] = rows[k].second;
    }
    return values;
}

void write_kernel_csv(const TriKernel& kernel, std::ostream& os) {
    const TimeGrid& grid = kernel.grid();
    os << "t,s,value\n";
    for (int i = 0; i <= grid.N; ++i) {
        const double* row = kernel.row(i);
        for (int j = 0; j <= i; ++j) {
            os << fmt_double(grid.node(i)) << ',' << fmt_double(grid.node(j)) << ','
               << fmt_double(row[j]) << '\n';
        }
    }
}

TriKernel read_kernel_csv(std::istream& is, const TimeGrid& grid) {
    TriKernel K(grid);
    std::string line;
    bool header_seen = false;
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!data_line(line)) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw ValidationError("BadCsv", "expected three columns t,s,value in kernel CSV");
        }
        const int i = grid.index_of(parse_double(fields[0], "kernel CSV"));
        const int j = grid.index_of(parse_double(fields[1], "kernel CSV"));
        if (j > i) {
            throw ValidationError("BadCsv", "kernel CSV entry above the diagonal (s > t)");
        }
        K.at(i, j) = parse_double(fields[2], "kernel CSV");
        ++count;
    }
    if (count != TriKernel::packed_size(grid.N)) {
        throw ValidationError("BadCsv", "kernel CSV has " + std::to_string(count) +
                                            " entries, expected " +
                                            std::to_string(TriKernel::packed_size(grid.N)));
    }
    return K;
}

void write_path_csv(const ScalarPath& path, const std::string& column, std::ostream& os) {
    write_paths_csv({column}, {&path}, os);
}

void write_paths_csv(const std::vector<std::string>& columns,
                     const std::vector<const ScalarPath*>& paths, std::ostream& os) {
    os << 't';
    for (const auto& c : columns) os << ',' << c;
    os << '\n';
    if (paths.empty()) return;
    const TimeGrid& grid = paths.front()->grid;
    for (int i = 0; i <= grid.N; ++i) {
        os << fmt_double(grid.node(i));
        for (const ScalarPath* p : paths) os << ',' << fmt_double((*p)[i]);
        os << '\n';
    }
}

}  // namespace riskfilt
