#include <cstdio>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "penalfd/penalfd.h"

namespace {

int exit_code(penalfd_status s) {
    switch (s) {
        case PENALFD_OK: return 0;
        case PENALFD_ERR_VALIDATION:
        case PENALFD_ERR_PARSE: return 2;
        case PENALFD_ERR_SOLVER: return 3;
        default: return 1;
    }
}

void print_line(const char* line, void*) { std::printf("%s\n", line); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volume-penalization finite-difference experiments"};
    std::string command, config_path, out_dir;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool allow_upwind2_disk = false;

    app.add_option("command", command, "solve | sweep-eps | sweep-h | blayer | condnum | supersol")
        ->required()
        ->check(CLI::IsMember({"solve", "sweep-eps", "sweep-h", "blayer", "condnum", "supersol"}));
    app.add_option("--config", config_path, "INI configuration file")->required();
    app.add_option("--out", out_dir, "output directory for the CSV files")->required();
    app.add_option("--jobs", jobs, "parallel parameter points")->check(CLI::PositiveNumber);
    app.add_flag("--allow-upwind2-disk", allow_upwind2_disk, "permit the second-order scheme with the disk");
    CLI11_PARSE(app, argc, argv);

    penalfd_config* cfg = nullptr;
    penalfd_status st = penalfd_config_load(config_path.c_str(), &cfg);
    if (st != PENALFD_OK) {
        std::fprintf(stderr, "penalfd: %s\n", penalfd_last_error());
        return exit_code(st);
    }
    if (allow_upwind2_disk) penalfd_config_set_allow_upwind2_disk(cfg, 1);

    st = penalfd_run(command.c_str(), cfg, out_dir.c_str(), jobs, print_line, nullptr);
    if (st != PENALFD_OK) std::fprintf(stderr, "penalfd: %s\n", penalfd_last_error());
    penalfd_config_free(cfg);
    return exit_code(st);
}
