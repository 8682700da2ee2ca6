#pragma once

#include "mmj/base_metrics.hpp"
#include "mmj/clustering.hpp"
#include "mmj/mmj_mst.hpp"
#include "mmj/widest_path.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmj::io {

/// Malformed input; `line` is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// 17 significant digits (round-trips every double); infinities as `inf` / `-inf`.
std::string format_real(double value);
double parse_real(std::string_view token, std::size_t line = 0);

/// Rows of comma-separated reals. A first row that does not parse is treated as a header.
Matrix read_numeric_csv(const std::filesystem::path& path);

PointSet read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const PointSet& points);

/// Square matrix; throws ParseError on a non-square shape.
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& values);

/// Edge list `u,v,capacity` preceded by a `#n=<N>` line.
CapacityGraph read_capacity_graph(const std::filesystem::path& path, bool directed);
void write_capacity_graph(const std::filesystem::path& path, const CapacityGraph& g);

void write_edge_list_csv(const std::filesystem::path& path, const std::vector<TreeEdge>& edges);

/// `index,label,border_status` rows with a header.
void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels,
                      const std::vector<BorderStatus>& status);
std::vector<int> read_labels_csv(const std::filesystem::path& path);

struct MatrixMetadata {
    Index n = 0;
    bool directed = false;
    std::string engine;
    std::string base_metric;
    std::optional<std::uint64_t> seed;
};

void write_matrix_metadata(const std::filesystem::path& path, const MatrixMetadata& meta);
MatrixMetadata read_matrix_metadata(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

} // namespace mmj::io
