#include "penalfd/experiments.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "penalfd/errors.hpp"
#include "penalfd/parallel.hpp"
#include "penalfd/reference.hpp"
#include "penalfd/supersolutions.hpp"

namespace penalfd {

namespace {

std::string fmt(double v) { return format_double(v); }

PenalConfig penal_at(const RunConfig& cfg, double eps) {
    PenalConfig p = cfg.penal;
    p.eps = eps;
    p.source = cfg.mcase.data(p.alpha);
    return p;
}

const char* norm_names[] = {"Linf", "L2sqrt", "H1sqrt"};

double norm_value(const ErrorReport& r, int k) { return k == 0 ? r.l_inf : (k == 1 ? r.l2 : r.h1); }

void add_error_row(CsvTable& t, std::optional<std::string> param, const ErrorReport& r) {
    std::vector<std::string> row;
    if (param) row.push_back(*param);
    row.insert(row.end(), {r.mask.name(), fmt(r.l_inf), fmt(r.l2_sum), fmt(r.l2), fmt(r.h1_sum), fmt(r.h1),
                           std::to_string(r.nodes)});
    t.add_row(std::move(row));
}

std::vector<std::string> error_header(bool with_param, const std::string& param) {
    std::vector<std::string> h;
    if (with_param) h.push_back(param);
    h.insert(h.end(), {"mask", "Linf", "L2", "L2sqrt", "H1", "H1sqrt", "nodes"});
    return h;
}

// orders.csv rows for every mask and norm over a parameter sequence.
CsvTable orders_table(const std::string& param, const std::vector<double>& params,
                      const std::vector<std::vector<ErrorReport>>& reports, std::vector<std::string>& summary) {
    CsvTable t({"mask", "norm", param + "_from", param + "_to", "order"});
    if (params.size() < 2) return t;
    const std::size_t masks = reports.front().size();
    for (std::size_t m = 0; m < masks; ++m) {
        for (int k = 0; k < 3; ++k) {
            std::vector<std::pair<double, double>> values;
            for (std::size_t s = 0; s < params.size(); ++s) values.emplace_back(params[s], norm_value(reports[s][m], k));
            bool positive = true;
            for (const auto& v : values) positive = positive && v.second > 0.0;
            std::string line = reports.front()[m].mask.name() + " " + norm_names[k] + " orders:";
            if (!positive) {
                summary.push_back(line + " skipped (zero error)");
                continue;
            }
            const std::vector<double> orders = convergence_order(values);
            for (std::size_t s = 0; s < orders.size(); ++s) {
                t.add_row({reports.front()[m].mask.name(), norm_names[k], fmt(params[s]), fmt(params[s + 1]),
                           fmt(orders[s])});
                line += " " + fmt(orders[s]);
            }
            summary.push_back(line);
        }
    }
    return t;
}

std::string solver_note(const SolveReport& r) {
    std::ostringstream os;
    os << (r.method == SolveMethod::BiCGStab ? "bicgstab" : "direct") << " residual " << fmt(r.final_residual);
    if (r.method == SolveMethod::BiCGStab) os << " after " << r.iterations << " iterations";
    return os.str();
}

RunOutput run_solve(const RunConfig& cfg) {
    RunOutput out;
    const CaseSolve s = solve_case(cfg, cfg.penal.eps, cfg.n);
    const std::vector<ErrorReport> errs = compute_errors(cfg, s.grid, s.fields, s.report.solution);
    out.files.emplace_back("solution.csv", solution_table(s.grid, s.fields, s.report.solution));
    out.files.emplace_back("errors.csv", errors_table(errs));
    out.summary.push_back("N=" + std::to_string(cfg.n) + " eps=" + fmt(cfg.penal.eps) + ": " + solver_note(s.report));
    for (const ErrorReport& r : errs)
        out.summary.push_back(r.mask.name() + ": Linf " + fmt(r.l_inf) + " L2 " + fmt(r.l2) + " H1 " + fmt(r.h1));
    return out;
}

RunOutput run_sweep(const RunConfig& cfg, bool over_eps, unsigned jobs) {
    const std::size_t count = over_eps ? cfg.sweep_eps.size() : cfg.sweep_n.size();
    std::vector<std::vector<ErrorReport>> reports(count);
    std::vector<std::string> notes(count);
    parallel_tasks(count, jobs, [&](std::size_t k) {
        const double eps = over_eps ? cfg.sweep_eps[k] : cfg.penal.eps;
        const int n = over_eps ? cfg.n : cfg.sweep_n[k];
        const CaseSolve s = solve_case(cfg, eps, n);
        reports[k] = compute_errors(cfg, s.grid, s.fields, s.report.solution);
        notes[k] = "N=" + std::to_string(n) + " eps=" + fmt(eps) + ": " + solver_note(s.report);
    });

    RunOutput out;
    out.summary = notes;
    const std::string param = over_eps ? "eps" : "N";
    std::vector<double> params;
    CsvTable errs(error_header(true, param));
    for (std::size_t k = 0; k < count; ++k) {
        const double p = over_eps ? cfg.sweep_eps[k] : static_cast<double>(cfg.sweep_n[k]);
        params.push_back(p);
        const std::string ptext = over_eps ? fmt(p) : std::to_string(cfg.sweep_n[k]);
        for (const ErrorReport& r : reports[k]) add_error_row(errs, ptext, r);
    }
    out.files.emplace_back("errors.csv", std::move(errs));
    out.files.emplace_back("orders.csv", orders_table(param, params, reports, out.summary));
    return out;
}

RunOutput run_blayer(const RunConfig& cfg, unsigned jobs) {
    const std::size_t count = cfg.blayer_eps.size();
    struct Point_ {
        std::optional<BlThickness> bl;
        double ru = 0.0;
        std::string status;
        RatioProfile profile;
        std::string note;
    };
    std::vector<Point_> pts(count);
    const LimitSolution limit(cfg.mcase, penal_at(cfg, cfg.blayer_eps.empty() ? 1.0 : cfg.blayer_eps[0]),
                              characteristic_dt(cfg, cfg.n));
    const auto u_lim = [&limit](Point p) { return limit.value(p); };
    parallel_tasks(count, jobs, [&](std::size_t k) {
        const double eps = cfg.blayer_eps[k];
        const CaseSolve s = solve_case(cfg, eps, cfg.n);
        Point_& pt = pts[k];
        pt.note = "N=" + std::to_string(cfg.n) + " eps=" + fmt(eps) + ": " + solver_note(s.report);
        try {
            pt.bl = bl_thickness(s.grid, s.report.solution, u_lim, cfg.cut_y);
            pt.ru = pt.bl->ru;
            pt.status = "ok";
        } catch (const EstimatorDomainError& e) {
            pt.ru = e.ratio();
            pt.status = "ru-out-of-range";
        }
        if (cfg.blayer_profile) pt.profile = ratio_profile(s.grid, s.report.solution, u_lim, cfg.cut_y);
    });

    RunOutput out;
    const double h = 1.0 / cfg.n;
    CsvTable bl({"eps", "x", "RU", "bl1", "bl2", "status"});
    CsvTable prof({"eps", "x", "RU"});
    std::vector<std::pair<double, double>> bl1, bl2;
    for (std::size_t k = 0; k < count; ++k) {
        const Point_& pt = pts[k];
        const double eps = cfg.blayer_eps[k];
        out.summary.push_back(pt.note);
        if (pt.bl) {
            bl.add_row({fmt(eps), fmt(h), fmt(pt.ru), fmt(pt.bl->bl1), fmt(pt.bl->bl2), pt.status});
            bl1.emplace_back(eps, pt.bl->bl1);
            bl2.emplace_back(eps, pt.bl->bl2);
            out.summary.push_back("eps=" + fmt(eps) + ": RU(h) " + fmt(pt.ru) + " BL1 " + fmt(pt.bl->bl1) + " BL2 " +
                                  fmt(pt.bl->bl2));
        } else {
            bl.add_row({fmt(eps), fmt(h), fmt(pt.ru), "nan", "nan", pt.status});
            out.summary.push_back("eps=" + fmt(eps) + ": RU(h) = " + fmt(pt.ru) +
                                  " outside (0,1), thickness estimators undefined");
        }
        for (const auto& [x, ru] : pt.profile.points) prof.add_row({fmt(eps), fmt(x), fmt(ru)});
    }
    CsvTable orders({"estimator", "eps_from", "eps_to", "order"});
    auto add_orders = [&](const char* name, const std::vector<std::pair<double, double>>& v) {
        if (v.size() < 2) return;
        const std::vector<double> o = convergence_order(v);
        std::string line = std::string(name) + " orders:";
        for (std::size_t s = 0; s < o.size(); ++s) {
            orders.add_row({name, fmt(v[s].first), fmt(v[s + 1].first), fmt(o[s])});
            line += " " + fmt(o[s]);
        }
        out.summary.push_back(line);
    };
    add_orders("bl1", bl1);
    add_orders("bl2", bl2);
    out.files.emplace_back("blayer.csv", std::move(bl));
    out.files.emplace_back("orders.csv", std::move(orders));
    if (cfg.blayer_profile) out.files.emplace_back("blayer_profile.csv", std::move(prof));
    return out;
}

RunOutput run_condnum(const RunConfig& cfg, unsigned jobs) {
    const std::size_t count = cfg.cond_eps.size();
    struct Row {
        double bound = 0.0;
        Cond2Estimate raw, jac;
    };
    std::vector<Row> rows(count);
    const Grid grid(cfg.n);
    parallel_tasks(count, jobs, [&](std::size_t k) {
        const PenalConfig p = penal_at(cfg, cfg.cond_eps[k]);
        const ExtensionFields fields = make_fields(grid, p);
        const AssembledSystem sys = assemble(grid, p, fields);
        rows[k].bound = cond_inf_bound(sys.matrix);
        rows[k].raw = cond2_estimate(sys.matrix, cfg.cond_iters);
        rows[k].jac = cond2_estimate(jacobi_precondition(sys).matrix, cfg.cond_iters);
    });
    RunOutput out;
    CsvTable t({"eps", "kappa_inf_bound", "kappa2", "kappa2_jacobi"});
    for (std::size_t k = 0; k < count; ++k) {
        const Row& r = rows[k];
        t.add_row({fmt(cfg.cond_eps[k]), fmt(r.bound), fmt(r.raw.kappa), fmt(r.jac.kappa)});
        std::string line = "eps=" + fmt(cfg.cond_eps[k]) + ": kappa_inf bound " + fmt(r.bound) + " kappa2 " +
                           fmt(r.raw.kappa) + " kappa2(D^-1 A) " + fmt(r.jac.kappa);
        if (!r.raw.converged || !r.jac.converged) line += " (power iteration hit the iteration budget)";
        out.summary.push_back(line);
    }
    out.files.emplace_back("condnum.csv", std::move(t));
    return out;
}

RunOutput run_supersol(const RunConfig& cfg, unsigned jobs) {
    std::vector<std::pair<bool, double>> tasks;
    for (double e : cfg.supersol_eps_1d) tasks.emplace_back(false, e);
    for (double e : cfg.supersol_eps_spherical) tasks.emplace_back(true, e);
    std::vector<SupersolReport> reps(tasks.size());
    parallel_tasks(tasks.size(), jobs, [&](std::size_t k) {
        reps[k] = tasks[k].first ? check_spherical(tasks[k].second, cfg.supersol_m)
                                 : check_1d(tasks[k].second, cfg.supersol_m);
    });
    RunOutput out;
    CsvTable t({"kind", "eps", "grid_pts", "beta", "min_p", "min_q", "min_residual_p", "min_residual_q", "gap_value",
                "gap_derivative", "p_prime_origin", "linf_near", "linf_far", "value_interface", "value_end", "pass"});
    for (const SupersolReport& r : reps) {
        t.add_row({r.kind, fmt(r.eps), std::to_string(r.grid_pts), fmt(r.beta), fmt(r.min_p), fmt(r.min_q),
                   fmt(r.min_residual_p), fmt(r.min_residual_q), fmt(r.gap_value), fmt(r.gap_derivative),
                   fmt(r.p_prime_origin), fmt(r.linf_near), fmt(r.linf_far), fmt(r.value_interface),
                   fmt(r.value_end), r.pass ? "true" : "false"});
        out.summary.push_back(r.kind + " eps=" + fmt(r.eps) + ": " + (r.pass ? "pass" : "FAIL") + " (min_p " +
                              fmt(r.min_p) + ", min_q " + fmt(r.min_q) + ")");
    }
    out.files.emplace_back("supersol.csv", std::move(t));
    return out;
}

}  // namespace

double characteristic_dt(const RunConfig& cfg, int n) { return cfg.char_dt > 0.0 ? cfg.char_dt : 0.25 / n; }

CaseSolve solve_case(const RunConfig& cfg, double eps, int n) {
    Grid grid(n);
    const PenalConfig p = penal_at(cfg, eps);
    ExtensionFields fields = make_fields(grid, p);
    AssembledSystem sys = assemble(grid, p, fields);
    SolveReport rep = solve(sys, cfg.solver);
    return {grid, std::move(fields), std::move(sys), std::move(rep)};
}

std::vector<ErrorReport> compute_errors(const RunConfig& cfg, const Grid& grid, const ExtensionFields& fields,
                                        std::span<const double> u) {
    const ManufacturedCase mc = cfg.mcase;
    const ReferenceField exact{[mc](Point p) { return mc.exact(p); }, [mc](Point p) { return mc.gradient(p); }};
    std::optional<LimitSolution> limit;
    std::vector<ErrorReport> out;
    for (const Mask& m : cfg.masks) {
        if (m.kind == Mask::Kind::ObstacleStrip) {
            if (!limit) limit.emplace(cfg.mcase, cfg.penal, characteristic_dt(cfg, grid.n()));
            const LimitSolution& lim = *limit;
            const ReferenceField ref{[&lim](Point p) { return lim.value(p); },
                                     [&lim](Point p) { return lim.gradient(p); }};
            out.push_back(error_norms(grid, u, fields, ref, m));
        } else {
            out.push_back(error_norms(grid, u, fields, exact, m));
        }
    }
    return out;
}

CsvTable solution_table(const Grid& grid, const ExtensionFields& fields, std::span<const double> u) {
    CsvTable t({"i", "j", "x", "y", "chi", "U"});
    for (int i = 0; i <= grid.n(); ++i) {
        for (int j = 0; j <= grid.n(); ++j) {
            const Point p = grid.point(i, j);
            t.add_row({std::to_string(i), std::to_string(j), fmt(p.x), fmt(p.y), std::to_string(fields.chi(p)),
                       fmt(u[grid.node_of(i, j)])});
        }
    }
    return t;
}

std::vector<double> solution_from_table(const Grid& grid, const CsvTable& table) {
    if (table.header() != std::vector<std::string>{"i", "j", "x", "y", "chi", "U"})
        throw InvalidArgument("not a solution table (header mismatch)");
    if (table.rows().size() != grid.size()) throw InvalidArgument("solution table does not match the grid size");
    std::vector<double> u(grid.size());
    std::vector<bool> seen(grid.size(), false);
    for (const auto& row : table.rows()) {
        const int i = std::stoi(row[0]);
        const int j = std::stoi(row[1]);
        const std::size_t node = grid.node_of(i, j);
        if (seen[node]) throw InvalidArgument("duplicate node in solution table");
        seen[node] = true;
        u[node] = parse_double(row[5]);
    }
    return u;
}

CsvTable errors_table(const std::vector<ErrorReport>& reports) {
    CsvTable t(error_header(false, ""));
    for (const ErrorReport& r : reports) add_error_row(t, std::nullopt, r);
    return t;
}

CsvTable errors_from_solution(const RunConfig& cfg, const std::filesystem::path& solution_csv) {
    const Grid grid(cfg.n);
    const std::vector<double> u = solution_from_table(grid, CsvTable::read(solution_csv.string()));
    const ExtensionFields fields = make_fields(grid, penal_at(cfg, cfg.penal.eps));
    return errors_table(compute_errors(cfg, grid, fields, u));
}

RunOutput run_experiment(Command command, const RunConfig& cfg, unsigned jobs) {
    const std::vector<std::string> violations = validate_config(cfg, command);
    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& v : violations) msg += "\n  " + v;
        throw ValidationError(msg);
    }
    jobs = std::max(1u, jobs);
    switch (command) {
        case Command::Solve: return run_solve(cfg);
        case Command::SweepEps: return run_sweep(cfg, true, jobs);
        case Command::SweepH: return run_sweep(cfg, false, jobs);
        case Command::Blayer: return run_blayer(cfg, jobs);
        case Command::Condnum: return run_condnum(cfg, jobs);
        case Command::Supersol: return run_supersol(cfg, jobs);
    }
    throw InvalidArgument("unknown command");
}

void write_outputs(const RunOutput& out, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InvalidArgument("cannot create output directory '" + dir.string() + "': " + ec.message());
    for (const auto& [name, table] : out.files) table.write((dir / name).string());
}

}  // namespace penalfd
