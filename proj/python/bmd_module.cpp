#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bmd/dataio.hpp"
#include "bmd/decompose.hpp"
#include "bmd/oracle.hpp"
#include "bmd/qmatrix.hpp"

namespace py = pybind11;
using namespace bmd;

namespace {

BitMatrix matrix_from_numpy(const py::array& array) {
    if (array.ndim() != 2)
        throw py::value_error("expected a 2-d array, got " + std::to_string(array.ndim()) +
                              " dimensions");
    const auto a = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>(array);
    const auto view = a.unchecked<2>();
    BitMatrix m(static_cast<std::size_t>(view.shape(0)), static_cast<std::size_t>(view.shape(1)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i)
        for (py::ssize_t j = 0; j < view.shape(1); ++j)
            if (view(i, j)) m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return m;
}

py::array_t<bool> matrix_to_numpy(const BitMatrix& m) {
    py::array_t<bool> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m.get(i, j);
    return out;
}

TieBreaker make_tie(const std::string& tie, std::uint64_t seed) {
    if (tie == "first") return {TieBreak::first_index, 0};
    if (tie == "last") return {TieBreak::last_index, 0};
    if (tie == "random") return {TieBreak::seeded_random, seed};
    throw py::value_error("tie must be 'first', 'last' or 'random', got '" + tie + "'");
}

Algorithm make_algorithm(const std::string& name) {
    if (name == "remove-smallest") return Algorithm::remove_smallest;
    if (name == "pick-largest") return Algorithm::pick_largest;
    throw py::value_error("algorithm must be 'remove-smallest' or 'pick-largest', got '" + name +
                          "'");
}

std::vector<std::pair<std::size_t, std::uint64_t>> rounds_to_pairs(
    const std::vector<PickRound>& rounds) {
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    out.reserve(rounds.size());
    for (const PickRound& r : rounds) out.emplace_back(r.source_col, r.gain);
    return out;
}

}  // namespace

PYBIND11_MODULE(bmd, m) {
    m.doc() = "Exact and from-below Boolean matrix decomposition under the column-use condition";

    py::class_<BitMatrix>(m, "BitMatrix")
        .def(py::init(&matrix_from_numpy), py::arg("array"))
        .def_property_readonly("rows", &BitMatrix::rows)
        .def_property_readonly("cols", &BitMatrix::cols)
        .def_property_readonly("ones", &BitMatrix::count)
        .def("to_numpy", &matrix_to_numpy)
        .def("__eq__",
             [](const BitMatrix& a, const BitMatrix& b) { return a == b; })
        .def("__repr__", [](const BitMatrix& a) {
            return "<bmd.BitMatrix " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                   ", " + std::to_string(a.count()) + " ones>";
        });
    py::implicitly_convertible<py::array, BitMatrix>();

    py::class_<Decomposition>(m, "Decomposition")
        .def_property_readonly("u", [](const Decomposition& d) { return matrix_to_numpy(d.u); })
        .def_property_readonly("v", [](const Decomposition& d) { return matrix_to_numpy(d.v); })
        .def_property_readonly("k", &Decomposition::k)
        .def_readonly("provenance", &Decomposition::provenance)
        .def_readonly("covered_ones", &Decomposition::covered_ones)
        .def_readonly("total_ones", &Decomposition::total_ones)
        .def_readonly("exact", &Decomposition::exact)
        .def_readonly("truncated_post_hoc", &Decomposition::truncated_post_hoc)
        .def_property_readonly("coverage", &Decomposition::coverage)
        .def_property_readonly(
            "orientation",
            [](const Decomposition& d) { return to_string(d.orientation); })
        .def_property_readonly(
            "rounds", [](const Decomposition& d) { return rounds_to_pairs(d.rounds); })
        .def("__repr__", [](const Decomposition& d) {
            return "<bmd.Decomposition k=" + std::to_string(d.k()) +
                   (d.exact ? ", exact>" : ">");
        });

    py::class_<qmatrix::QMiningResult>(m, "QMiningResult")
        .def_property_readonly(
            "a", [](const qmatrix::QMiningResult& r) { return matrix_to_numpy(r.a); })
        .def_property_readonly(
            "q", [](const qmatrix::QMiningResult& r) { return matrix_to_numpy(r.q); })
        .def_property_readonly("k", &qmatrix::QMiningResult::k)
        .def_readonly("item_provenance", &qmatrix::QMiningResult::item_provenance)
        .def_property_readonly("rounds", [](const qmatrix::QMiningResult& r) {
            return rounds_to_pairs(r.rounds);
        });

    py::class_<oracle::OracleResult>(m, "OracleResult")
        .def_readonly("min_k", &oracle::OracleResult::min_k)
        .def_readonly("witness", &oracle::OracleResult::witness)
        .def_readonly("explored", &oracle::OracleResult::explored);

    m.def(
        "compute_j", [](const BitMatrix& a) { return compute_j(a).j; }, py::arg("m"),
        "Maximal factor J with m = m o J^T; J[i,t] = 1 iff column i dominates column t.");

    m.def(
        "tile_areas",
        [](const BitMatrix& a) {
            std::vector<std::uint64_t> areas;
            for (const Tile& t : candidate_tiles(a, compute_j(a))) areas.push_back(t.area);
            return areas;
        },
        py::arg("m"), "Area of each candidate tile, one per column.");

    m.def(
        "decompose",
        [](const BitMatrix& a, const std::string& algorithm, double coverage,
           const std::string& tie, std::uint64_t seed, bool both_orientations) {
            const Algorithm alg = make_algorithm(algorithm);
            const TieBreaker tb = make_tie(tie, seed);
            if (both_orientations && coverage >= 1.0) return best_orientation(a, alg, tb);
            return approx_decompose(a, alg, coverage, tb);
        },
        py::arg("m"), py::arg("algorithm") = "pick-largest", py::arg("coverage") = 1.0,
        py::arg("tie") = "first", py::arg("seed") = 0, py::arg("both_orientations") = false);

    m.def(
        "remove_smallest",
        [](const BitMatrix& a, const std::string& tie, std::uint64_t seed) {
            return remove_smallest(a, make_tie(tie, seed));
        },
        py::arg("m"), py::arg("tie") = "first", py::arg("seed") = 0);

    m.def(
        "pick_largest",
        [](const BitMatrix& a, const std::string& tie, std::uint64_t seed, double coverage) {
            return pick_largest(a, make_tie(tie, seed), coverage);
        },
        py::arg("m"), py::arg("tie") = "first", py::arg("seed") = 0, py::arg("coverage") = 1.0);

    m.def(
        "coverage_curve",
        [](const BitMatrix& a, const std::string& algorithm, const std::string& tie,
           std::uint64_t seed) {
            std::vector<std::pair<std::size_t, double>> points;
            for (const CoverageCurvePoint& p :
                 coverage_curve(a, make_algorithm(algorithm), make_tie(tie, seed)))
                points.emplace_back(p.tiles_used, p.coverage);
            return points;
        },
        py::arg("m"), py::arg("algorithm") = "pick-largest", py::arg("tie") = "first",
        py::arg("seed") = 0);

    m.def(
        "verify",
        [](const BitMatrix& a, const Decomposition& d) {
            const VerifyReport rep = verify(a, d);
            py::dict out;
            out["pass"] = rep.pass();
            out["from_below"] = rep.from_below;
            out["exact_product"] = rep.exact_product;
            out["provenance_ok"] = rep.provenance_ok;
            out["problems"] = rep.problems;
            return out;
        },
        py::arg("m"), py::arg("decomposition"));

    m.def(
        "ideal_response",
        [](const BitMatrix& a, const BitMatrix& q) { return qmatrix::ideal_response(a, q); },
        py::arg("a"), py::arg("q"));

    m.def(
        "mine_qmatrix",
        [](const BitMatrix& r, const std::string& algorithm, const std::string& tie,
           std::uint64_t seed) {
            return qmatrix::mine_qmatrix(r, make_algorithm(algorithm), make_tie(tie, seed));
        },
        py::arg("r"), py::arg("algorithm") = "pick-largest", py::arg("tie") = "first",
        py::arg("seed") = 0);

    m.def(
        "oracle_min_k",
        [](const BitMatrix& a, std::size_t limit) { return oracle::oracle_min_k(a, limit); },
        py::arg("m"), py::arg("limit") = 20,
        "Exhaustive minimum tile cover; refuses more than `limit` distinct candidates.");

    m.def(
        "load_dense",
        [](const std::string& path, char delimiter) {
            auto loaded = dataio::load_dense(path, delimiter);
            return py::make_tuple(std::move(loaded.matrix), loaded.labels);
        },
        py::arg("path"), py::arg("delimiter") = ' ');

    m.def(
        "load_transactions",
        [](const std::string& path) {
            auto loaded = dataio::load_transactions(path);
            return py::make_tuple(std::move(loaded.matrix), loaded.labels);
        },
        py::arg("path"));

    m.def(
        "load_nominal",
        [](const std::string& path, bool has_header) {
            auto loaded = dataio::expand_nominal(dataio::load_nominal(path, has_header));
            return py::make_tuple(std::move(loaded.matrix), loaded.labels);
        },
        py::arg("path"), py::arg("has_header") = true,
        "Loads a CSV of nominal attributes and one-hot expands it.");
}
