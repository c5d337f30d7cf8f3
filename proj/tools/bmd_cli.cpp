// Command-line front end: decompose, approx, curve, qmine, verify, oracle,
// bench subcommands over the dense / transactions / nominal file formats.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmd/dataio.hpp"
#include "bmd/decompose.hpp"
#include "bmd/oracle.hpp"
#include "bmd/qmatrix.hpp"

namespace fs = std::filesystem;
using namespace bmd;

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "dense";
    std::string algorithm = "pick-largest";
    std::string tie = "first";
    std::optional<std::uint64_t> seed;
    bool both_orientations = false;
    std::string out = "bmd_out";
    char delimiter = ' ';
    bool no_header = false;
    double coverage = 1.0;
};

void add_input_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--input", opts.input, "input matrix file")->required();
    cmd->add_option("--format", opts.format, "input format")
        ->check(CLI::IsMember({"dense", "transactions", "nominal"}));
    cmd->add_option("--delimiter", opts.delimiter, "token delimiter for dense input");
    cmd->add_flag("--no-header", opts.no_header, "nominal input has no header line");
}

void add_run_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--algorithm", opts.algorithm, "decomposition heuristic")
        ->check(CLI::IsMember({"remove-smallest", "pick-largest"}));
    cmd->add_option("--tie", opts.tie, "tie-break policy")
        ->check(CLI::IsMember({"first", "last", "random"}));
    cmd->add_option("--seed", opts.seed, "seed for --tie random");
}

Algorithm parse_algorithm(const std::string& s) {
    return s == "remove-smallest" ? Algorithm::remove_smallest : Algorithm::pick_largest;
}

TieBreaker parse_tie(const CommonOpts& opts) {
    TieBreaker tie;
    if (opts.tie == "first") {
        tie.kind = TieBreak::first_index;
    } else if (opts.tie == "last") {
        tie.kind = TieBreak::last_index;
    } else {
        if (!opts.seed) throw CLI::ValidationError("--tie random requires --seed");
        tie.kind = TieBreak::seeded_random;
        tie.seed = *opts.seed;
    }
    return tie;
}

std::string sniff_format(const fs::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".fimi" || ext == ".dat" || ext == ".tr") return "transactions";
    if (ext == ".csv" || ext == ".data") return "nominal";  // .data = headerless UCI style
    return "dense";
}

dataio::LoadedMatrix load_input(const std::string& format, const fs::path& path, char delimiter,
                                bool no_header) {
    if (format == "transactions") return dataio::load_transactions(path);
    if (format == "nominal")
        return dataio::expand_nominal(dataio::load_nominal(path, !no_header));
    return dataio::load_dense(path, delimiter);
}

double run_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt_double(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// Rough footprint of the structures a run allocates, from dimensions alone.
std::uint64_t memory_estimate(std::size_t m, std::size_t n, Algorithm alg) {
    const std::uint64_t row_words = (n + 63) / 64, col_words = (m + 63) / 64;
    std::uint64_t bytes = 0;
    bytes += 8ull * m * row_words;                      // input matrix
    bytes += 8ull * n * col_words;                      // its transpose
    bytes += 2ull * 8ull * n * ((n + 63) / 64);         // J and its transpose
    bytes += 8ull * n * (col_words + row_words);        // tile masks
    if (alg == Algorithm::remove_smallest)
        bytes += 4ull * m * n;                          // cover counts
    else
        bytes += 8ull * m * row_words;                  // covered mask
    return bytes;
}

int run_decomposition(const CommonOpts& opts, double coverage_target) {
    const dataio::LoadedMatrix loaded =
        load_input(opts.format, opts.input, opts.delimiter, opts.no_header);
    const BitMatrix& m = loaded.matrix;
    const dataio::MatrixStats stats = dataio::matrix_stats(m);
    const Algorithm alg = parse_algorithm(opts.algorithm);
    const TieBreaker tie = parse_tie(opts);

    Decomposition d;
    const double ms = run_ms([&] {
        if (opts.both_orientations && coverage_target >= 1.0)
            d = best_orientation(m, alg, tie);
        else
            d = approx_decompose(m, alg, coverage_target, tie);
    });

    const VerifyReport report = verify(m, d);
    dataio::export_decomposition(
        d, loaded.labels, opts.out,
        {{"algorithm", to_string(alg)},
         {"tie", opts.tie},
         {"coverage_target", fmt_double(coverage_target)},
         {"elapsed_ms", fmt_double(ms, 3)},
         {"verified", report.pass() ? "true" : "false"}});

    std::cout << "matrix=" << m.rows() << "x" << m.cols() << " ones=" << m.count()
              << " zero_rows=" << stats.zero_rows << " zero_cols=" << stats.zero_cols << "\n";
    std::cout << "k=" << d.k() << " coverage=" << fmt_double(d.coverage())
              << " exact=" << (d.exact ? "true" : "false")
              << " orientation=" << to_string(d.orientation) << "\n";
    std::cout << "elapsed_ms=" << fmt_double(ms, 3) << " candidate_tiles=" << m.cols()
              << " mem_estimate_bytes=" << memory_estimate(m.rows(), m.cols(), alg) << "\n";
    std::cout << "verify=" << (report.pass() ? "pass" : "FAIL") << "\n";
    if (!report.pass()) {
        std::cerr << report.to_string() << "\n";
        return 1;
    }
    return 0;
}

int run_curve(const CommonOpts& opts) {
    const dataio::LoadedMatrix loaded =
        load_input(opts.format, opts.input, opts.delimiter, opts.no_header);
    const std::vector<CoverageCurvePoint> curve =
        coverage_curve(loaded.matrix, parse_algorithm(opts.algorithm), parse_tie(opts));
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (opts.out != "-") {
        file.open(opts.out);
        if (!file) throw std::runtime_error("cannot write " + opts.out);
        out = &file;
    }
    for (const CoverageCurvePoint& p : curve)
        *out << p.tiles_used << "," << fmt_double(p.coverage) << "\n";
    return 0;
}

int run_qmine(const CommonOpts& opts) {
    const dataio::LoadedMatrix loaded =
        load_input(opts.format, opts.input, opts.delimiter, opts.no_header);
    const BitMatrix& r = loaded.matrix;
    const Algorithm alg = parse_algorithm(opts.algorithm);

    qmatrix::QMiningResult res;
    const double ms = run_ms([&] { res = qmatrix::mine_qmatrix(r, alg, parse_tie(opts)); });

    const BitMatrix round_trip = qmatrix::ideal_response(res.a, res.q);
    const bool exact = (round_trip == r);
    const auto audit = qmatrix::dominance_audit(res);

    fs::create_directories(opts.out);
    dataio::write_dense(res.a, fs::path(opts.out) / "A.txt");
    dataio::write_dense(res.q, fs::path(opts.out) / "Q.txt");
    std::ofstream prov(fs::path(opts.out) / "provenance.txt");
    for (std::size_t i = 0; i < res.item_provenance.size(); ++i) {
        const std::size_t item = res.item_provenance[i];
        prov << item << '\t' << (item < loaded.labels.size() ? loaded.labels[item] : "") << '\n';
    }
    std::ofstream audit_file(fs::path(opts.out) / "audit.txt");
    audit_file << audit.to_string() << "\n";
    std::ofstream summary(fs::path(opts.out) / "summary.txt");
    summary << "students=" << r.rows() << "\nitems=" << r.cols() << "\nk=" << res.k()
            << "\nround_trip_exact=" << (exact ? "true" : "false")
            << "\ndominance_violations=" << audit.violations.size()
            << "\nelapsed_ms=" << fmt_double(ms, 3) << "\n";

    std::cout << "k=" << res.k() << " round_trip_exact=" << (exact ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < res.rounds.size(); ++i)
        std::cout << "round=" << i + 1 << " item=" << res.rounds[i].source_col
                  << " gain=" << res.rounds[i].gain << "\n";
    std::cout << "audit: " << audit.to_string() << "\n";
    return exact ? 0 : 1;
}

int run_verify(const std::string& input, const std::string& factors, char delimiter) {
    const dataio::LoadedMatrix loaded = dataio::load_dense(input, delimiter);
    const fs::path dir = factors;

    Decomposition d;
    d.u = dataio::load_dense(dir / "U.txt").matrix;
    d.v = dataio::load_dense(dir / "V.txt").matrix;
    if (d.u.cols() == 0) d.u = BitMatrix(loaded.matrix.rows(), 0);
    if (d.v.rows() == 0) d.v = BitMatrix(0, loaded.matrix.cols());

    std::ifstream prov(dir / "provenance.txt");
    std::string line;
    while (std::getline(prov, line))
        if (!line.empty()) d.provenance.push_back(std::stoul(line.substr(0, line.find('\t'))));

    // summary.txt supplies the claimed flags; fall back to recomputation
    std::map<std::string, std::string> summary;
    std::ifstream sm(dir / "summary.txt");
    while (std::getline(sm, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) summary[line.substr(0, eq)] = line.substr(eq + 1);
    }
    const BitMatrix product = bool_product(d.u, d.v);
    d.covered_ones =
        summary.count("covered_ones") ? std::stoull(summary["covered_ones"]) : product.count();
    d.total_ones =
        summary.count("total_ones") ? std::stoull(summary["total_ones"]) : loaded.matrix.count();
    d.exact = summary.count("exact") ? summary["exact"] == "true" : (product == loaded.matrix);
    if (summary.count("orientation") && summary["orientation"] == "row-use")
        d.orientation = Orientation::row_use;

    const VerifyReport report = verify(loaded.matrix, d);
    std::cout << report.to_string() << "\n";
    std::cout << (report.pass() ? "verify=pass" : "verify=FAIL") << "\n";
    return report.pass() ? 0 : 1;
}

int run_oracle(const CommonOpts& opts, std::size_t limit, bool check_heuristics) {
    const dataio::LoadedMatrix loaded =
        load_input(opts.format, opts.input, opts.delimiter, opts.no_header);
    const oracle::OracleResult res = oracle::oracle_min_k(loaded.matrix, limit);
    std::cout << "min_k=" << res.min_k << " explored=" << res.explored << "\nwitness=";
    for (std::size_t i = 0; i < res.witness.size(); ++i)
        std::cout << (i ? "," : "") << res.witness[i];
    std::cout << "\n";
    if (check_heuristics) {
        const std::size_t rs = remove_smallest(loaded.matrix).k();
        const std::size_t pl = pick_largest(loaded.matrix).k();
        std::cout << "remove_smallest_k=" << rs << " pick_largest_k=" << pl << "\n";
        if (rs < res.min_k || pl < res.min_k) {
            std::cerr << "heuristic beat the exhaustive optimum; oracle is broken\n";
            return 1;
        }
    }
    return 0;
}

int run_bench(const std::vector<std::string>& datasets, const std::string& algorithm,
              std::vector<double> levels, const std::string& format, const std::string& out,
              char delimiter) {
    if (levels.empty()) levels = {0.5, 0.75, 0.9, 0.95, 0.98, 1.0};
    std::vector<Algorithm> algs;
    if (algorithm == "both")
        algs = {Algorithm::remove_smallest, Algorithm::pick_largest};
    else
        algs = {parse_algorithm(algorithm)};

    std::ofstream csv;
    if (!out.empty()) {
        csv.open(out);
        if (!csv) throw std::runtime_error("cannot write " + out);
        csv << "dataset,rows,cols,ones,algorithm,coverage_target,k,coverage,elapsed_ms,mem_"
               "estimate_bytes\n";
    }

    std::printf("%-20s %-16s %8s %6s %10s %12s %14s\n", "dataset", "algorithm", "target", "k",
                "coverage", "elapsed_ms", "mem_estimate");
    for (const std::string& ds : datasets) {
        if (!fs::exists(ds)) {
            std::cout << "skipping " << ds << " (not found)\n";
            continue;
        }
        const std::string fmt = format == "auto" ? sniff_format(ds) : format;
        const bool headerless = fs::path(ds).extension() == ".data";
        const dataio::LoadedMatrix loaded = load_input(fmt, ds, delimiter, headerless);
        const std::string name = fs::path(ds).filename().string();
        for (Algorithm alg : algs) {
            for (double level : levels) {
                Decomposition d;
                const double ms =
                    run_ms([&] { d = approx_decompose(loaded.matrix, alg, level); });
                const std::uint64_t mem =
                    memory_estimate(loaded.matrix.rows(), loaded.matrix.cols(), alg);
                std::printf("%-20s %-16s %8.2f %6zu %10s %12.3f %14llu\n", name.c_str(),
                            to_string(alg).c_str(), level, d.k(),
                            fmt_double(d.coverage()).c_str(), ms,
                            static_cast<unsigned long long>(mem));
                if (csv.is_open())
                    csv << name << ',' << loaded.matrix.rows() << ',' << loaded.matrix.cols()
                        << ',' << loaded.matrix.count() << ',' << to_string(alg) << ','
                        << fmt_double(level, 2) << ',' << d.k() << ','
                        << fmt_double(d.coverage()) << ',' << fmt_double(ms, 3) << ',' << mem
                        << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and from-below Boolean matrix decomposition under the column-use "
                 "condition"};
    app.require_subcommand(1);

    CommonOpts opts;

    CLI::App* decompose = app.add_subcommand("decompose", "exact decomposition M = U o V");
    add_input_opts(decompose, opts);
    add_run_opts(decompose, opts);
    decompose->add_flag("--both-orientations", opts.both_orientations,
                        "also try the transpose and keep the smaller k");
    decompose->add_option("--out", opts.out, "output directory");

    CLI::App* approx = app.add_subcommand("approx", "from-below approximation to a coverage "
                                                    "target");
    add_input_opts(approx, opts);
    add_run_opts(approx, opts);
    approx->add_option("--coverage", opts.coverage, "coverage target in (0,1]")
        ->check(CLI::Range(1e-9, 1.0))
        ->required();
    approx->add_option("--out", opts.out, "output directory");

    std::string curve_out = "-";
    CLI::App* curve = app.add_subcommand("curve", "coverage per tile prefix");
    add_input_opts(curve, opts);
    add_run_opts(curve, opts);
    curve->add_option("--out", curve_out, "output file ('-' for stdout)");

    CLI::App* qmine = app.add_subcommand("qmine", "mine knowledge states and requirements from "
                                                  "a response matrix");
    add_input_opts(qmine, opts);
    add_run_opts(qmine, opts);
    qmine->add_option("--out", opts.out, "output directory");

    std::string verify_factors = "bmd_out";
    CLI::App* verify_cmd = app.add_subcommand("verify", "re-check exported factors against the "
                                                        "input matrix");
    verify_cmd->add_option("--input", opts.input, "input matrix file (dense)")->required();
    verify_cmd->add_option("--factors", verify_factors, "directory with U.txt/V.txt")->required();
    verify_cmd->add_option("--delimiter", opts.delimiter, "token delimiter for dense input");

    std::size_t oracle_limit = 20;
    bool oracle_check = false;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive minimum tile cover (small "
                                                        "inputs only)");
    add_input_opts(oracle_cmd, opts);
    oracle_cmd->add_option("--limit", oracle_limit, "maximum distinct candidate tiles");
    oracle_cmd->add_flag("--check-heuristics", oracle_check,
                         "also run both heuristics and compare k");

    std::vector<std::string> bench_datasets;
    std::string bench_algorithm = "both";
    std::vector<double> bench_levels;
    std::string bench_format = "auto";
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "k/time/memory across coverage levels");
    bench->add_option("datasets", bench_datasets, "dataset files");
    bench->add_option("--algorithm", bench_algorithm, "heuristic or 'both'")
        ->check(CLI::IsMember({"remove-smallest", "pick-largest", "both"}));
    bench->add_option("--levels", bench_levels, "coverage levels");
    bench->add_option("--format", bench_format, "input format for all datasets")
        ->check(CLI::IsMember({"auto", "dense", "transactions", "nominal"}));
    bench->add_option("--out", bench_out, "machine-readable CSV output");
    bench->add_option("--delimiter", opts.delimiter, "token delimiter for dense input");

    CLI11_PARSE(app, argc, argv);

    try {
        if (decompose->parsed()) return run_decomposition(opts, 1.0);
        if (approx->parsed()) return run_decomposition(opts, opts.coverage);
        if (curve->parsed()) {
            opts.out = curve_out;
            return run_curve(opts);
        }
        if (qmine->parsed()) return run_qmine(opts);
        if (verify_cmd->parsed()) return run_verify(opts.input, verify_factors, opts.delimiter);
        if (oracle_cmd->parsed()) return run_oracle(opts, oracle_limit, oracle_check);
        if (bench->parsed())
            return run_bench(bench_datasets, bench_algorithm, bench_levels, bench_format,
                             bench_out, opts.delimiter);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
