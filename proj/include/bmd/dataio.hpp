#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bmd/bitmat.hpp"
#include "bmd/decompose.hpp"

namespace bmd {
namespace dataio {

using ColumnLabels = std::vector<std::string>;

struct LoadedMatrix {
    BitMatrix matrix;
    ColumnLabels labels;
};

// Records of named categorical attributes; expands one-hot into a Boolean
// matrix. Missing-value symbols such as "?" are ordinary values and get
// their own column.
struct NominalTable {
    std::vector<std::string> attribute_names;
    std::vector<std::vector<std::string>> records;
};

// Dense format: m lines of n binary tokens. delimiter ' ' accepts any
// whitespace run. Ragged rows and non-binary tokens are rejected with the
// offending 1-based line number.
LoadedMatrix load_dense(const std::filesystem::path& path, char delimiter = ' ');

// FIMI-style transactions: each line is a whitespace-separated list of
// non-negative item ids. One row per line (empty lines give all-zero rows),
// one column per distinct id in ascending order.
LoadedMatrix load_transactions(const std::filesystem::path& path);

// Comma-separated nominal table. With has_header=false attribute names
// default to attr0..attrN-1.
NominalTable load_nominal(const std::filesystem::path& path, bool has_header = true,
                          char delimiter = ',');

// One column per (attribute, value) pair, values ordered by first
// appearance; labels read "name=value". Every record contributes exactly
// one 1 per attribute.
LoadedMatrix expand_nominal(const NominalTable& table);

void write_dense(const BitMatrix& m, const std::filesystem::path& path);

struct MatrixStats {
    std::size_t zero_rows = 0;
    std::size_t zero_cols = 0;
};
MatrixStats matrix_stats(const BitMatrix& m);

// Writes U.txt, V.txt, provenance.txt (index<TAB>label) and summary.txt
// (key=value lines) under dir, creating it if needed. extra_summary pairs
// are appended in the given order.
void export_decomposition(const Decomposition& d, const ColumnLabels& labels,
                          const std::filesystem::path& dir,
                          const std::vector<std::pair<std::string, std::string>>& extra_summary = {});

}  // namespace dataio
}  // namespace bmd
