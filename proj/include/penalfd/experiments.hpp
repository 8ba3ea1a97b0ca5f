#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "penalfd/analysis.hpp"
#include "penalfd/config.hpp"
#include "penalfd/csv.hpp"
#include "penalfd/grid.hpp"

namespace penalfd {

struct CaseSolve {
    Grid grid;
    ExtensionFields fields;
    AssembledSystem system;
    SolveReport report;
};

// Assembles and solves the penalized problem of `cfg` at (eps, n).
CaseSolve solve_case(const RunConfig& cfg, double eps, int n);

// Characteristic step used for u_lim on a grid of size n.
double characteristic_dt(const RunConfig& cfg, int n);

// One report per configured mask. Fluid masks compare with the exact
// solution, obstacle strips with u_lim.
std::vector<ErrorReport> compute_errors(const RunConfig& cfg, const Grid& grid, const ExtensionFields& fields,
                                        std::span<const double> u);

CsvTable solution_table(const Grid& grid, const ExtensionFields& fields, std::span<const double> u);
// Reads the U column of a solution table back into node order.
std::vector<double> solution_from_table(const Grid& grid, const CsvTable& table);

CsvTable errors_table(const std::vector<ErrorReport>& reports);
// Recomputes errors.csv of a `solve` run from its solution.csv.
CsvTable errors_from_solution(const RunConfig& cfg, const std::filesystem::path& solution_csv);

struct RunOutput {
    std::vector<std::pair<std::string, CsvTable>> files;  // file name, content
    std::vector<std::string> summary;
};

// Runs a validated config. Sweep points run on up to `jobs` threads; the
// output does not depend on `jobs`.
RunOutput run_experiment(Command command, const RunConfig& cfg, unsigned jobs);

void write_outputs(const RunOutput& out, const std::filesystem::path& dir);

}  // namespace penalfd
