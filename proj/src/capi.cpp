#include "penalfd/penalfd.h"

#include <filesystem>
#include <new>
#include <string>
#include <vector>

#include "penalfd/config.hpp"
#include "penalfd/errors.hpp"
#include "penalfd/experiments.hpp"
#include "penalfd/supersolutions.hpp"

struct penalfd_config {
    penalfd::RunConfig cfg;
    std::vector<std::string> violations;
};

struct penalfd_solution {
    int n = 0;
    penalfd::SolveReport report;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;
thread_local int last_column = 0;

penalfd_status fail(penalfd_status s, const char* what) {
    last_error = what;
    return s;
}

template <class Fn>
penalfd_status guarded(Fn&& fn) {
    last_error.clear();
    last_line = last_column = 0;
    try {
        fn();
        return PENALFD_OK;
    } catch (const penalfd::ParseError& e) {
        last_line = e.line();
        last_column = e.column();
        return fail(PENALFD_ERR_PARSE, e.what());
    } catch (const penalfd::ValidationError& e) {
        return fail(PENALFD_ERR_VALIDATION, e.what());
    } catch (const penalfd::SolverError& e) {
        return fail(PENALFD_ERR_SOLVER, e.what());
    } catch (const penalfd::DomainError& e) {
        return fail(PENALFD_ERR_DOMAIN, e.what());
    } catch (const penalfd::InvalidArgument& e) {
        return fail(PENALFD_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(PENALFD_ERR_IO, e.what());
    } catch (const penalfd::IoError& e) {
        return fail(PENALFD_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PENALFD_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PENALFD_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PENALFD_ERR_INTERNAL, "unknown error");
    }
}

penalfd_status null_arg(const char* name) {
    last_error = std::string(name) + " must not be NULL";
    last_line = last_column = 0;
    return PENALFD_ERR_INVALID_ARGUMENT;
}

void fill(const penalfd::SupersolReport& r, penalfd_supersol_report* out) {
    *out = {r.eps,           r.grid_pts,        r.beta,      r.min_p,          r.min_q,
            r.min_residual_p, r.min_residual_q, r.gap_value, r.gap_derivative, r.linf_near,
            r.linf_far,      r.p_prime_origin,  r.value_interface, r.value_end, r.pass ? 1 : 0};
}

}  // namespace

extern "C" {

const char* penalfd_version(void) { return "0.1.0"; }

const char* penalfd_last_error(void) { return last_error.c_str(); }

void penalfd_last_error_location(int* line, int* column) {
    if (line) *line = last_line;
    if (column) *column = last_column;
}

penalfd_status penalfd_config_load(const char* path, penalfd_config** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new penalfd_config{penalfd::load_config(path), {}}; });
}

penalfd_status penalfd_config_parse(const char* text, penalfd_config** out) {
    if (!text) return null_arg("text");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new penalfd_config{penalfd::parse_config(text), {}}; });
}

void penalfd_config_free(penalfd_config* cfg) { delete cfg; }

penalfd_status penalfd_config_set_allow_upwind2_disk(penalfd_config* cfg, int allow) {
    if (!cfg) return null_arg("cfg");
    cfg->cfg.penal.allow_upwind2_disk = allow != 0;
    return PENALFD_OK;
}

penalfd_status penalfd_config_validate(penalfd_config* cfg, const char* command, size_t* count) {
    if (!cfg) return null_arg("cfg");
    if (!command) return null_arg("command");
    return guarded([&] {
        cfg->violations = penalfd::validate_config(cfg->cfg, penalfd::parse_command(command));
        if (count) *count = cfg->violations.size();
    });
}

const char* penalfd_config_violation(const penalfd_config* cfg, size_t index) {
    if (!cfg || index >= cfg->violations.size()) return nullptr;
    return cfg->violations[index].c_str();
}

penalfd_status penalfd_solve(const penalfd_config* cfg, double eps, int n, penalfd_solution** out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        penalfd::RunConfig rc = cfg->cfg;
        if (eps > 0.0) rc.penal.eps = eps;
        if (n > 0) rc.n = n;
        const std::vector<std::string> v = penalfd::validate_config(rc, penalfd::Command::Solve);
        if (!v.empty()) throw penalfd::ValidationError(v.front());
        penalfd::CaseSolve s = penalfd::solve_case(rc, rc.penal.eps, rc.n);
        *out = new penalfd_solution{rc.n, std::move(s.report)};
    });
}

void penalfd_solution_free(penalfd_solution* sol) { delete sol; }

int penalfd_solution_grid_n(const penalfd_solution* sol) { return sol ? sol->n : 0; }

size_t penalfd_solution_size(const penalfd_solution* sol) { return sol ? sol->report.solution.size() : 0; }

const double* penalfd_solution_values(const penalfd_solution* sol) {
    return sol ? sol->report.solution.data() : nullptr;
}

double penalfd_solution_residual(const penalfd_solution* sol) { return sol ? sol->report.final_residual : 0.0; }

size_t penalfd_solution_iterations(const penalfd_solution* sol) { return sol ? sol->report.iterations : 0; }

penalfd_status penalfd_solution_errors(const penalfd_config* cfg, const penalfd_solution* sol, const char* mask,
                                       penalfd_error_report* out) {
    if (!cfg) return null_arg("cfg");
    if (!sol) return null_arg("sol");
    if (!mask) return null_arg("mask");
    if (!out) return null_arg("out");
    return guarded([&] {
        penalfd::RunConfig rc = cfg->cfg;
        rc.n = sol->n;
        rc.masks = {penalfd::Mask::parse(mask)};
        const penalfd::Grid grid(sol->n);
        const penalfd::ExtensionFields fields = penalfd::make_fields(grid, rc.penal);
        const penalfd::ErrorReport r = penalfd::compute_errors(rc, grid, fields, sol->report.solution).front();
        *out = {r.l_inf, r.l2_sum, r.l2, r.h1_sum, r.h1, r.nodes};
    });
}

penalfd_status penalfd_run(const char* command, const penalfd_config* cfg, const char* out_dir, unsigned jobs,
                           penalfd_line_fn on_line, void* user) {
    if (!command) return null_arg("command");
    if (!cfg) return null_arg("cfg");
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] {
        const penalfd::RunOutput out = penalfd::run_experiment(penalfd::parse_command(command), cfg->cfg, jobs);
        penalfd::write_outputs(out, out_dir);
        if (on_line)
            for (const std::string& line : out.summary) on_line(line.c_str(), user);
    });
}

penalfd_status penalfd_errors_from_solution(const penalfd_config* cfg, const char* solution_csv,
                                            const char* errors_csv) {
    if (!cfg) return null_arg("cfg");
    if (!solution_csv) return null_arg("solution_csv");
    if (!errors_csv) return null_arg("errors_csv");
    return guarded([&] { penalfd::errors_from_solution(cfg->cfg, solution_csv).write(errors_csv); });
}

penalfd_status penalfd_check_1d(double eps, size_t m, penalfd_supersol_report* out) {
    if (!out) return null_arg("out");
    return guarded([&] { fill(penalfd::check_1d(eps, m), out); });
}

penalfd_status penalfd_check_spherical(double eps, size_t m, penalfd_supersol_report* out) {
    if (!out) return null_arg("out");
    return guarded([&] { fill(penalfd::check_spherical(eps, m), out); });
}

penalfd_status penalfd_bessel_i(int nu, double x, double* out) {
    if (!out) return null_arg("out");
    return guarded([&] { *out = penalfd::bessel_i(nu, x); });
}

}
