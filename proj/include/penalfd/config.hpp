#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "penalfd/analysis.hpp"
#include "penalfd/assembly.hpp"
#include "penalfd/linear_solve.hpp"
#include "penalfd/reference.hpp"

namespace penalfd {

// INI text: "[section]" headers, "key = value" lines, '#' or ';' comments.
struct IniEntry {
    std::string value;
    int line = 0;
    int column = 0;  // column of the first value character
};

using IniDocument = std::map<std::string, std::map<std::string, IniEntry>>;

// Throws ParseError with the line and column of the offending character.
IniDocument parse_ini(std::string_view text);

enum class Command { Solve, SweepEps, SweepH, Blayer, Condnum, Supersol };

Command parse_command(std::string_view name);
std::string command_name(Command c);

struct RunConfig {
    ManufacturedCase mcase;
    PenalConfig penal;  // source filled from mcase
    int n = 100;
    SolverOptions solver;
    double char_dt = 0.0;  // 0 selects h/4

    std::vector<double> sweep_eps;
    std::vector<int> sweep_n;
    std::vector<Mask> masks{Mask::fluid_full()};

    double cut_y = 0.5;
    std::vector<double> blayer_eps;
    bool blayer_profile = true;

    std::vector<double> cond_eps;
    std::size_t cond_iters = 3000;

    std::vector<double> supersol_eps_1d;
    std::vector<double> supersol_eps_spherical;
    std::size_t supersol_m = 1000;
};

// Parses and type-checks a config. Value errors carry line and column;
// semantic rules are left to validate_config.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Empty iff `cfg` can run `command`. Each entry names the key and the rule.
std::vector<std::string> validate_config(const RunConfig& cfg, Command command);

}  // namespace penalfd
