#ifndef RISKFILT_CSV_HPP
#define RISKFILT_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskfilt/types.hpp"

namespace riskfilt {

/// Shortest round-trip decimal form of a double (std::to_chars); byte-stable
/// across runs and thread counts.
std::string fmt_double(double v);

/// `t,value` rows with a header; used for sampled coefficient files.
std::vector<std::pair<double, double>> read_samples_csv(const std::string& path);

/// Reads a sampled coefficient file and checks its nodes against the grid.
std::vector<double> samples_on_grid(const std::string& path, const TimeGrid& grid);

/// `t,s,value` rows in row-major triangular order with a header.
void write_kernel_csv(const TriKernel& kernel, std::ostream& os);
TriKernel read_kernel_csv(std::istream& is, const TimeGrid& grid);

void write_path_csv(const ScalarPath& path, const std::string& column, std::ostream& os);

/// Multi-column path export: header `t,<c1>,<c2>,...` and one row per node.
void write_paths_csv(const std::vector<std::string>& columns,
                     const std::vector<const ScalarPath*>& paths, std::ostream& os);

}  // namespace riskfilt

#endif
