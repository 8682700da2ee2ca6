#include "mmj/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace mmj::io {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool try_parse_real(std::string_view token, double& value) {
    if (token.starts_with('+')) token.remove_prefix(1);
    if (token.empty()) return false;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size() && !std::isnan(value);
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    return lines;
}

Index parse_index(std::string_view token, std::size_t line) {
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        throw ParseError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                             std::string(token) + "'",
                         line);
    return value;
}

} // namespace

ParseError::ParseError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}

std::string format_real(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view token, std::size_t line) {
    double value = 0.0;
    if (!try_parse_real(trim(token), value))
        throw ParseError("line " + std::to_string(line) + ": cannot parse number '" + std::string(token) + "'", line);
    return value;
}

Matrix read_numeric_csv(const fs::path& path) {
    const auto lines = read_lines(path);
    std::vector<double> values;
    Index cols = 0;
    Index rows = 0;
    bool first_content = true;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto text = trim(lines[ln]);
        if (text.empty()) continue;
        const auto fields = split(text);
        const std::size_t line_no = ln + 1;
        if (first_content) {
            first_content = false;
            double probe = 0.0;
            const bool numeric = std::all_of(fields.begin(), fields.end(),
                                             [&](std::string_view f) { return try_parse_real(f, probe); });
            cols = fields.size();
            if (!numeric) continue; // header
        }
        if (fields.size() != cols)
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(cols) + " columns, got " + std::to_string(fields.size()),
                             line_no);
        for (const auto f : fields) {
            double v = 0.0;
            if (!try_parse_real(f, v))
                throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": cannot parse number '" +
                                     std::string(f) + "'",
                                 line_no);
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw ParseError(path.string() + ": no numeric rows", 0);
    Matrix out(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) out(r, c) = values[r * cols + c];
    return out;
}

PointSet read_points_csv(const fs::path& path) {
    try {
        return PointSet(read_numeric_csv(path));
    } catch (const std::invalid_argument& err) {
        throw ParseError(path.string() + ": " + err.what(), 0);
    }
}

void write_points_csv(const fs::path& path, const PointSet& points) { write_matrix_csv(path, points.coords()); }

Matrix read_matrix_csv(const fs::path& path) {
    Matrix m = read_numeric_csv(path);
    if (!m.is_square())
        throw ParseError(path.string() + ": matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected square",
                         0);
    return m;
}

void write_matrix_csv(const fs::path& path, const Matrix& values) {
    std::string out;
    out.reserve(values.rows() * values.cols() * 20);
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c) out += ',';
            out += format_real(values(r, c));
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

CapacityGraph read_capacity_graph(const fs::path& path, bool directed) {
    const auto lines = read_lines(path);
    std::optional<CapacityGraph> graph;
    std::map<std::pair<Index, Index>, double> seen;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        const auto text = trim(lines[ln]);
        if (text.empty()) continue;
        if (text.starts_with("#n=")) {
            if (graph) throw ParseError(path.string() + ": duplicate '#n=' line", line_no);
            const Index n = parse_index(trim(text.substr(3)), line_no);
            if (n == 0) throw ParseError(path.string() + ": node count must be positive", line_no);
            graph.emplace(n, directed);
            continue;
        }
        if (text.starts_with('#')) continue;
        if (!graph) throw ParseError(path.string() + ": missing '#n=<N>' header before edges", line_no);
        const auto fields = split(text);
        if (fields.size() != 3)
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": expected u,v,capacity",
                             line_no);
        if (fields[0] == "u") continue; // column header
        const Index u = parse_index(fields[0], line_no);
        const Index v = parse_index(fields[1], line_no);
        const double c = parse_real(fields[2], line_no);
        if (u >= graph->size() || v >= graph->size())
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": node out of range", line_no);
        if (u == v)
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": self loops are implicit",
                             line_no);
        if (c < 0.0)
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": negative capacity", line_no);
        const auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
        if (const auto it = seen.find(key); it != seen.end() && it->second != c)
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": conflicting capacity for edge",
                             line_no);
        seen[key] = c;
        graph->set_capacity(u, v, c);
    }
    if (!graph) throw ParseError(path.string() + ": missing '#n=<N>' header", 0);
    return *graph;
}

void write_capacity_graph(const fs::path& path, const CapacityGraph& g) {
    std::string out = "#n=" + std::to_string(g.size()) + "\n";
    for (Index u = 0; u < g.size(); ++u) {
        for (Index v = g.directed() ? 0 : u + 1; v < g.size(); ++v) {
            if (u == v || g.capacity(u, v) == 0.0) continue;
            out += std::to_string(u) + "," + std::to_string(v) + "," + format_real(g.capacity(u, v)) + "\n";
        }
    }
    write_file_atomic(path, out);
}

void write_edge_list_csv(const fs::path& path, const std::vector<TreeEdge>& edges) {
    std::string out = "u,v,w\n";
    for (const auto& e : edges) out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + format_real(e.w) + "\n";
    write_file_atomic(path, out);
}

void write_labels_csv(const fs::path& path, const std::vector<int>& labels, const std::vector<BorderStatus>& status) {
    if (!status.empty() && status.size() != labels.size())
        throw std::invalid_argument("write_labels_csv: labels and border status differ in length");
    std::string out = "index,label,border_status\n";
    for (Index i = 0; i < labels.size(); ++i) {
        out += std::to_string(i) + "," + std::to_string(labels[i]) + ",";
        out += status.empty() ? "none" : std::string(to_string(status[i]));
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<int> read_labels_csv(const fs::path& path) {
    const auto lines = read_lines(path);
    std::vector<int> labels;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        const auto text = trim(lines[ln]);
        if (text.empty()) continue;
        const auto fields = split(text);
        if (fields[0] == "index" || fields[0] == "label") continue;
        const auto label_field = fields.size() >= 2 ? fields[1] : fields[0];
        if (fields.size() >= 2 && parse_index(fields[0], line_no) != labels.size())
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": indices must be 0..N-1 in order",
                             line_no);
        int label = 0;
        const auto [ptr, ec] = std::from_chars(label_field.data(), label_field.data() + label_field.size(), label);
        if (ec != std::errc() || ptr != label_field.data() + label_field.size() || label_field.empty())
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": cannot parse label '" +
                                 std::string(label_field) + "'",
                             line_no);
        labels.push_back(label);
    }
    return labels;
}

void write_matrix_metadata(const fs::path& path, const MatrixMetadata& meta) {
    nlohmann::json doc;
    doc["n"] = meta.n;
    doc["directed"] = meta.directed;
    doc["engine"] = meta.engine;
    doc["base_metric"] = meta.base_metric;
    doc["seed"] = meta.seed ? nlohmann::json(*meta.seed) : nlohmann::json(nullptr);
    write_file_atomic(path, doc.dump(2) + "\n");
}

MatrixMetadata read_matrix_metadata(const fs::path& path) {
    try {
        const auto doc = nlohmann::json::parse(read_file(path));
        MatrixMetadata meta;
        meta.n = doc.at("n").get<Index>();
        meta.directed = doc.at("directed").get<bool>();
        meta.engine = doc.at("engine").get<std::string>();
        meta.base_metric = doc.at("base_metric").get<std::string>();
        if (!doc.at("seed").is_null()) meta.seed = doc.at("seed").get<std::uint64_t>();
        return meta;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(path.string() + ": " + err.what(), 0);
    }
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace mmj::io
