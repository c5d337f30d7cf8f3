#include "bmd/dataio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bmd {
namespace dataio {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> out;
    if (delimiter == ' ') {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) out.push_back(tok);
        return out;
    }
    std::string tok;
    for (char c : line) {
        if (c == delimiter) {
            out.push_back(tok);
            tok.clear();
        } else if (c != '\r') {
            tok.push_back(c);
        }
    }
    out.push_back(tok);
    return out;
}

ColumnLabels ordinal_labels(std::size_t n) {
    ColumnLabels labels(n);
    for (std::size_t j = 0; j < n; ++j) labels[j] = std::to_string(j);
    return labels;
}

std::string format_coverage(double c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", c);
    return buf;
}

}  // namespace

LoadedMatrix load_dense(const std::filesystem::path& path, char delimiter) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<bool>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::vector<std::string> toks = split(line, delimiter);
        std::vector<bool> bits;
        bits.reserve(toks.size());
        for (const std::string& t : toks) {
            if (t == "0")
                bits.push_back(false);
            else if (t == "1")
                bits.push_back(true);
            else
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": token '" + t + "' is not 0 or 1");
        }
        if (rows.empty())
            width = bits.size();
        else if (bits.size() != width)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": row has " +
                                     std::to_string(bits.size()) + " tokens, expected " +
                                     std::to_string(width));
        rows.push_back(std::move(bits));
    }
    BitMatrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            if (rows[i][j]) m.set(i, j);
    return {std::move(m), ordinal_labels(width)};
}

LoadedMatrix load_transactions(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<std::uint64_t>> rows;
    std::map<std::uint64_t, std::size_t> item_col;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::uint64_t> items;
        while (ss >> tok) {
            std::uint64_t id = 0;
            std::size_t pos = 0;
            try {
                id = std::stoull(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || tok[0] == '-')
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": token '" + tok + "' is not a non-negative item id");
            items.push_back(id);
            item_col.emplace(id, 0);
        }
        rows.push_back(std::move(items));
    }
    std::size_t col = 0;
    ColumnLabels labels;
    for (auto& [id, c] : item_col) {  // std::map iterates ids in ascending order
        c = col++;
        labels.push_back(std::to_string(id));
    }
    BitMatrix m(rows.size(), item_col.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::uint64_t id : rows[i]) m.set(i, item_col[id]);
    return {std::move(m), std::move(labels)};
}

NominalTable load_nominal(const std::filesystem::path& path, bool has_header, char delimiter) {
    std::ifstream in = open_input(path);
    NominalTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields = split(line, delimiter);
        if (table.attribute_names.empty() && table.records.empty()) {
            if (has_header) {
                table.attribute_names = std::move(fields);
                continue;
            }
            table.attribute_names.resize(fields.size());
            for (std::size_t j = 0; j < fields.size(); ++j)
                table.attribute_names[j] = "attr" + std::to_string(j);
        }
        if (fields.size() != table.attribute_names.size())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": record has " + std::to_string(fields.size()) +
                                     " values, expected " +
                                     std::to_string(table.attribute_names.size()));
        table.records.push_back(std::move(fields));
    }
    return table;
}

LoadedMatrix expand_nominal(const NominalTable& table) {
    const std::size_t attrs = table.attribute_names.size();
    // Per attribute: distinct values in first-appearance order.
    std::vector<std::vector<std::string>> values(attrs);
    std::vector<std::map<std::string, std::size_t>> value_index(attrs);
    for (const auto& rec : table.records)
        for (std::size_t a = 0; a < attrs; ++a)
            if (value_index[a].emplace(rec[a], values[a].size()).second)
                values[a].push_back(rec[a]);

    ColumnLabels labels;
    std::vector<std::size_t> offset(attrs, 0);
    std::size_t width = 0;
    for (std::size_t a = 0; a < attrs; ++a) {
        offset[a] = width;
        width += values[a].size();
        for (const std::string& v : values[a])
            labels.push_back(table.attribute_names[a] + "=" + v);
    }

    BitMatrix m(table.records.size(), width);
    for (std::size_t i = 0; i < table.records.size(); ++i)
        for (std::size_t a = 0; a < attrs; ++a)
            m.set(i, offset[a] + value_index[a].at(table.records[i][a]));
    return {std::move(m), std::move(labels)};
}

void write_dense(const BitMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    // A matrix without columns has no printable rows; the file stays empty.
    if (m.cols() > 0) out << m.to_string();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

MatrixStats matrix_stats(const BitMatrix& m) {
    MatrixStats s;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.row_count(i) == 0) ++s.zero_rows;
    const BitMatrix t = transpose(m);
    for (std::size_t j = 0; j < t.rows(); ++j)
        if (t.row_count(j) == 0) ++s.zero_cols;
    return s;
}

void export_decomposition(const Decomposition& d, const ColumnLabels& labels,
                          const std::filesystem::path& dir,
                          const std::vector<std::pair<std::string, std::string>>& extra_summary) {
    std::filesystem::create_directories(dir);
    write_dense(d.u, dir / "U.txt");
    write_dense(d.v, dir / "V.txt");

    std::ofstream prov(dir / "provenance.txt");
    if (!prov) throw std::runtime_error("cannot write " + (dir / "provenance.txt").string());
    for (std::size_t i = 0; i < d.k(); ++i) {
        const std::size_t src = d.provenance[i];
        std::string label;
        if (d.orientation == Orientation::column_use && src < labels.size())
            label = labels[src];
        else
            label = std::to_string(src);
        prov << src << '\t' << label << '\n';
    }

    std::ofstream summary(dir / "summary.txt");
    if (!summary) throw std::runtime_error("cannot write " + (dir / "summary.txt").string());
    summary << "rows=" << d.u.rows() << '\n';
    summary << "cols=" << d.v.cols() << '\n';
    summary << "k=" << d.k() << '\n';
    summary << "total_ones=" << d.total_ones << '\n';
    summary << "covered_ones=" << d.covered_ones << '\n';
    summary << "coverage=" << format_coverage(d.coverage()) << '\n';
    summary << "exact=" << (d.exact ? "true" : "false") << '\n';
    summary << "orientation=" << to_string(d.orientation) << '\n';
    summary << "truncation=" << (d.truncated_post_hoc ? "post-hoc" : "none") << '\n';
    for (const auto& [key, value] : extra_summary) summary << key << '=' << value << '\n';
}

}  // namespace dataio
}  // namespace bmd
