#include "penalfd/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "penalfd/csv.hpp"
#include "penalfd/errors.hpp"

namespace penalfd {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::size_t skip_space(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    return pos;
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"problem", {"case", "c", "radius", "eps", "alpha", "scheme", "corner_rule", "allow_upwind2_disk"}},
        {"grid", {"n"}},
        {"solver", {"method", "tol", "max_iter", "direct_max_n", "jacobi"}},
        {"characteristics", {"dt"}},
        {"sweep", {"eps", "n"}},
        {"analysis", {"masks"}},
        {"blayer", {"cut_y", "eps", "profile"}},
        {"condnum", {"eps", "iters"}},
        {"supersol", {"eps_1d", "eps_spherical", "m"}},
    };
    return s;
}

// One comma-separated item with its column.
struct Item {
    std::string text;
    int column;
};

std::vector<Item> split_list(const IniEntry& e) {
    std::vector<Item> out;
    std::size_t start = 0;
    const std::string& v = e.value;
    while (true) {
        const std::size_t comma = v.find(',', start);
        const std::size_t end = comma == std::string::npos ? v.size() : comma;
        std::size_t a = skip_space(v, start);
        std::string_view item = trim_right(std::string_view(v).substr(a, end - a));
        if (item.empty()) throw ParseError("empty list item", e.line, e.column + static_cast<int>(a));
        out.push_back({std::string(item), e.column + static_cast<int>(a)});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(const std::string& text, int line, int column) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError("expected a number, got '" + text + "'", line, column + static_cast<int>(ptr - first));
    return v;
}

long long to_integer(const std::string& text, int line, int column) {
    long long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError("expected an integer, got '" + text + "'", line, column + static_cast<int>(ptr - first));
    return v;
}

bool to_bool(const IniEntry& e) {
    std::string v = e.value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ParseError("expected a boolean, got '" + e.value + "'", e.line, e.column);
}

class Reader {
public:
    explicit Reader(const IniDocument& doc) : doc_(doc) {}

    const IniEntry* find(const std::string& section, const std::string& key) const {
        const auto s = doc_.find(section);
        if (s == doc_.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    void number(const std::string& section, const std::string& key, double& out) const {
        if (const IniEntry* e = find(section, key)) out = to_double(e->value, e->line, e->column);
    }

    template <class Int>
    void integer(const std::string& section, const std::string& key, Int& out) const {
        if (const IniEntry* e = find(section, key)) {
            const long long v = to_integer(e->value, e->line, e->column);
            if (v < 0) throw ParseError(key + " must be non-negative", e->line, e->column);
            out = static_cast<Int>(v);
        }
    }

    void boolean(const std::string& section, const std::string& key, bool& out) const {
        if (const IniEntry* e = find(section, key)) out = to_bool(*e);
    }

    void numbers(const std::string& section, const std::string& key, std::vector<double>& out) const {
        if (const IniEntry* e = find(section, key)) {
            out.clear();
            for (const Item& it : split_list(*e)) out.push_back(to_double(it.text, e->line, it.column));
        }
    }

    void integers(const std::string& section, const std::string& key, std::vector<int>& out) const {
        if (const IniEntry* e = find(section, key)) {
            out.clear();
            for (const Item& it : split_list(*e)) {
                const long long v = to_integer(it.text, e->line, it.column);
                if (v < 0 || v > 1000000) throw ParseError("grid size out of range", e->line, it.column);
                out.push_back(static_cast<int>(v));
            }
        }
    }

    template <class Enum>
    void choice(const std::string& section, const std::string& key,
                std::initializer_list<std::pair<const char*, Enum>> options, Enum& out) const {
        const IniEntry* e = find(section, key);
        if (!e) return;
        for (const auto& [name, value] : options) {
            if (e->value == name) {
                out = value;
                return;
            }
        }
        std::string allowed;
        for (const auto& [name, value] : options) allowed += std::string(allowed.empty() ? "" : ", ") + name;
        throw ParseError(key + " must be one of {" + allowed + "}, got '" + e->value + "'", e->line, e->column);
    }

private:
    const IniDocument& doc_;
};

bool is_even_grid(int n) { return n >= 4 && n % 2 == 0; }

void check_grid(std::vector<std::string>& out, const RunConfig& cfg, const std::string& key, int n) {
    if (!is_even_grid(n)) {
        out.push_back(key + ": N must be an even integer >= 4 (got " + std::to_string(n) + ")");
        return;
    }
    if (cfg.penal.domain.kind == DomainKind::SquareInSquare) {
        const double cells = (0.5 - cfg.penal.domain.radius) * n;
        if (std::abs(cells - std::round(cells)) > 1e-9)
            out.push_back(key + ": square obstacle sides must lie on grid lines, (1/2 - R) N = " +
                          format_double(cells) + " is not an integer");
    }
}

void check_eps_list(std::vector<std::string>& out, const std::string& key, const std::vector<double>& values,
                    bool required) {
    if (required && values.empty()) out.push_back(key + ": list must not be empty");
    for (double e : values)
        if (!(e > 0.0)) out.push_back(key + ": eps must be > 0 (got " + format_double(e) + ")");
}

}  // namespace

IniDocument parse_ini(std::string_view text) {
    IniDocument doc;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        const std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;

        std::size_t c = skip_space(line, 0);
        if (c >= line.size() || line[c] == '#' || line[c] == ';') {
            if (nl == std::string_view::npos) break;
            continue;
        }
        auto col = [](std::size_t k) { return static_cast<int>(k) + 1; };
        if (line[c] == '[') {
            const std::size_t close = line.find(']', c);
            if (close == std::string_view::npos) throw ParseError("missing ']'", line_no, col(line.size()));
            const std::size_t rest = skip_space(line, close + 1);
            if (rest < line.size() && line[rest] != '#' && line[rest] != ';')
                throw ParseError("unexpected text after section header", line_no, col(rest));
            const std::size_t a = skip_space(line, c + 1);
            section = std::string(trim_right(line.substr(a, close - a)));
            if (!schema().contains(section)) throw ParseError("unknown section [" + section + "]", line_no, col(a));
            doc[section];
        } else {
            std::size_t k = c;
            while (k < line.size() && is_name_char(line[k])) ++k;
            if (k == c) throw ParseError("expected a key name", line_no, col(c));
            const std::string key(line.substr(c, k - c));
            const std::size_t eq = skip_space(line, k);
            if (eq >= line.size() || line[eq] != '=') throw ParseError("expected '='", line_no, col(eq));
            if (section.empty()) throw ParseError("key outside of any section", line_no, col(c));
            if (!schema().at(section).contains(key))
                throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no, col(c));
            std::size_t v = skip_space(line, eq + 1);
            std::string_view value = line.substr(v);
            const std::size_t hash = value.find_first_of("#;");
            if (hash != std::string_view::npos) value = value.substr(0, hash);
            value = trim_right(value);
            if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no, col(v));
            auto& entries = doc[section];
            if (entries.contains(key)) throw ParseError("duplicate key '" + key + "'", line_no, col(c));
            entries[key] = {std::string(value), line_no, col(v)};
        }
        if (nl == std::string_view::npos) break;
    }
    return doc;
}

Command parse_command(std::string_view name) {
    if (name == "solve") return Command::Solve;
    if (name == "sweep-eps") return Command::SweepEps;
    if (name == "sweep-h") return Command::SweepH;
    if (name == "blayer") return Command::Blayer;
    if (name == "condnum") return Command::Condnum;
    if (name == "supersol") return Command::Supersol;
    throw InvalidArgument("unknown command '" + std::string(name) + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Solve: return "solve";
        case Command::SweepEps: return "sweep-eps";
        case Command::SweepH: return "sweep-h";
        case Command::Blayer: return "blayer";
        case Command::Condnum: return "condnum";
        case Command::Supersol: return "supersol";
    }
    return {};
}

RunConfig parse_config(std::string_view text) {
    const IniDocument doc = parse_ini(text);
    const Reader rd(doc);
    RunConfig cfg;

    rd.choice<CaseId>("problem", "case", {{"square_sin5", CaseId::SquareSin5}, {"disk_sin", CaseId::DiskSin}},
                      cfg.mcase.id);
    cfg.mcase.c = 5.0;
    if (cfg.mcase.id == CaseId::DiskSin)
        rd.number("problem", "c", cfg.mcase.c);
    else if (const IniEntry* e = rd.find("problem", "c"))
        throw ParseError("'c' is fixed to 5 for square_sin5", e->line, e->column);
    cfg.penal.domain.kind = cfg.mcase.domain_kind();
    rd.number("problem", "radius", cfg.penal.domain.radius);
    rd.number("problem", "eps", cfg.penal.eps);
    rd.number("problem", "alpha", cfg.penal.alpha);
    rd.choice<Scheme>("problem", "scheme", {{"upwind1", Scheme::Upwind1}, {"upwind2", Scheme::Upwind2}},
                      cfg.penal.scheme);
    rd.choice<CornerRule>("problem", "corner_rule",
                          {{"plusx", CornerRule::PlusX}, {"minusy", CornerRule::MinusY}, {"mean", CornerRule::Mean}},
                          cfg.penal.corner_rule);
    rd.boolean("problem", "allow_upwind2_disk", cfg.penal.allow_upwind2_disk);

    rd.integer("grid", "n", cfg.n);

    rd.choice<SolveMethod>("solver", "method",
                           {{"auto", SolveMethod::Auto}, {"direct", SolveMethod::DirectLU},
                            {"bicgstab", SolveMethod::BiCGStab}},
                           cfg.solver.method);
    rd.number("solver", "tol", cfg.solver.tol);
    rd.integer("solver", "max_iter", cfg.solver.max_iter);
    if (const IniEntry* e = rd.find("solver", "direct_max_n")) {
        const long long v = to_integer(e->value, e->line, e->column);
        if (v < 0 || v > 100000) throw ParseError("direct_max_n out of range", e->line, e->column);
        cfg.solver.direct_max_dim = static_cast<std::size_t>(v + 1) * static_cast<std::size_t>(v + 1);
    }
    rd.boolean("solver", "jacobi", cfg.solver.jacobi);

    rd.number("characteristics", "dt", cfg.char_dt);

    rd.numbers("sweep", "eps", cfg.sweep_eps);
    rd.integers("sweep", "n", cfg.sweep_n);

    if (const IniEntry* e = rd.find("analysis", "masks")) {
        cfg.masks.clear();
        for (const Item& it : split_list(*e)) {
            try {
                cfg.masks.push_back(Mask::parse(it.text));
            } catch (const Error& err) {
                throw ParseError(err.what(), e->line, it.column);
            }
        }
    }

    rd.number("blayer", "cut_y", cfg.cut_y);
    rd.numbers("blayer", "eps", cfg.blayer_eps);
    rd.boolean("blayer", "profile", cfg.blayer_profile);

    rd.numbers("condnum", "eps", cfg.cond_eps);
    rd.integer("condnum", "iters", cfg.cond_iters);

    rd.numbers("supersol", "eps_1d", cfg.supersol_eps_1d);
    rd.numbers("supersol", "eps_spherical", cfg.supersol_eps_spherical);
    rd.integer("supersol", "m", cfg.supersol_m);

    cfg.penal.source = cfg.mcase.data(cfg.penal.alpha);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> validate_config(const RunConfig& cfg, Command command) {
    std::vector<std::string> out;
    const PenalConfig& p = cfg.penal;
    const double r = p.domain.radius;
    if (!(r > 0.0 && r < 0.5)) out.push_back("problem.radius: R must lie in (0, 1/2) (got " + format_double(r) + ")");
    if (!(p.alpha >= 0.0)) out.push_back("problem.alpha: alpha must be >= 0");
    if (p.domain.kind != cfg.mcase.domain_kind()) out.push_back("problem.case: case does not match the obstacle");
    if (p.scheme == Scheme::Upwind2 && p.domain.kind == DomainKind::DiskInSquare && !p.allow_upwind2_disk)
        out.push_back("problem.scheme: upwind2 is defined for the square obstacle; set allow_upwind2_disk "
                      "or pass --allow-upwind2-disk to use it with the disk");
    if (!(cfg.solver.tol > 0.0)) out.push_back("solver.tol: tolerance must be > 0");
    if (cfg.char_dt < 0.0) out.push_back("characteristics.dt: step must be >= 0");

    const bool uses_pde = command != Command::Supersol;
    if (uses_pde && command != Command::SweepEps && command != Command::Blayer && command != Command::Condnum &&
        !(p.eps > 0.0))
        out.push_back("problem.eps: eps must be > 0");
    if (uses_pde && command != Command::SweepH) check_grid(out, cfg, "grid.n", cfg.n);
    if (uses_pde && cfg.masks.empty()) out.push_back("analysis.masks: at least one mask is required");

    switch (command) {
        case Command::Solve: break;
        case Command::SweepEps: check_eps_list(out, "sweep.eps", cfg.sweep_eps, true); break;
        case Command::SweepH:
            if (!(p.eps > 0.0)) out.push_back("problem.eps: eps must be > 0");
            if (cfg.sweep_n.empty()) out.push_back("sweep.n: list must not be empty");
            for (int n : cfg.sweep_n) check_grid(out, cfg, "sweep.n", n);
            break;
        case Command::Blayer:
            check_eps_list(out, "blayer.eps", cfg.blayer_eps, true);
            if (is_even_grid(cfg.n)) {
                const double k = cfg.cut_y * cfg.n;
                if (std::abs(k - std::round(k)) > 1e-9 || cfg.cut_y <= 0.0 || cfg.cut_y >= 1.0)
                    out.push_back("blayer.cut_y: cut line must be an interior grid row");
            }
            break;
        case Command::Condnum:
            check_eps_list(out, "condnum.eps", cfg.cond_eps, true);
            if (is_even_grid(cfg.n) &&
                static_cast<std::size_t>(cfg.n + 1) * static_cast<std::size_t>(cfg.n + 1) > kCond2MaxDim)
                out.push_back("grid.n: condition number estimates are limited to N <= 150");
            if (cfg.cond_iters == 0) out.push_back("condnum.iters: must be > 0");
            break;
        case Command::Supersol:
            if (cfg.supersol_eps_1d.empty() && cfg.supersol_eps_spherical.empty())
                out.push_back("supersol: eps_1d or eps_spherical must be given");
            for (double e : cfg.supersol_eps_1d)
                if (!(e > 0.0 && e < 1.0)) out.push_back("supersol.eps_1d: eps must lie in (0,1)");
            for (double e : cfg.supersol_eps_spherical)
                if (!(e > 0.0 && e < 0.5)) out.push_back("supersol.eps_spherical: eps must lie in (0,1/2)");
            if (cfg.supersol_m < 100) out.push_back("supersol.m: M must be >= 100");
            break;
    }
    return out;
}

}  // namespace penalfd
