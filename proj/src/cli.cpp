#include "pdm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdm/errors.hpp"
#include "pdm/models.hpp"
#include "pdm/report.hpp"
#include "pdm/verifier.hpp"

namespace pdm {

std::vector<double> SweepSpec::values() const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i)
        v.push_back(count == 1 ? start : start + (stop - start) * i / static_cast<double>(count - 1));
    return v;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& flag, const std::string& text) {
    std::string t = trim(text);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw UsageError(flag + ": '" + text + "' is not a number");
    if (!std::isfinite(v)) throw UsageError(flag + ": value must be finite");
    return v;
}

int parse_int(const std::string& flag, const std::string& text) {
    std::string t = trim(text);
    int v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw UsageError(flag + ": '" + text + "' is not an integer");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Grid parse_grid(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("--grid: expected left:right:points, got '" + text + "'");
    Grid g{parse_double("--grid", parts[0]), parse_double("--grid", parts[1]), parse_int("--grid", parts[2])};
    try {
        g.validate();
    } catch (const Error& e) {
        throw UsageError(std::string("--grid: ") + e.what());
    }
    return g;
}

std::vector<int> parse_lset(const std::string& text) {
    std::vector<int> out;
    for (const auto& p : split(text, ',')) {
        int l = parse_int("--l-set", p);
        if (l < 0) throw UsageError("--l-set: angular momentum must be non-negative");
        out.push_back(l);
    }
    if (out.empty()) throw UsageError("--l-set: empty list");
    return out;
}

std::pair<std::string, double> parse_param(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param: expected key=value, got '" + text + "'");
    std::string key = trim(text.substr(0, eq));
    return {key, parse_double("--param " + key, text.substr(eq + 1))};
}

SweepSpec parse_sweep(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--sweep: expected key=start:stop:count");
    auto parts = split(text.substr(eq + 1), ':');
    if (parts.size() != 3) throw UsageError("--sweep: expected key=start:stop:count");
    SweepSpec s{trim(text.substr(0, eq)), parse_double("--sweep", parts[0]), parse_double("--sweep", parts[1]),
                parse_int("--sweep", parts[2])};
    if (s.count < 1) throw UsageError("--sweep: count must be at least 1");
    return s;
}

Command parse_command(const std::string& s) {
    if (s == "list") return Command::List;
    if (s == "potential") return Command::Potential;
    if (s == "spectrum") return Command::Spectrum;
    if (s == "wavefunction") return Command::Wavefunction;
    if (s == "verify") return Command::Verify;
    if (s == "sweep") return Command::Sweep;
    throw UsageError("unknown command '" + s + "'");
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw UsageError("--format: expected csv or json, got '" + s + "'");
}

struct RawOptions {
    std::string command, case_id, grid, l_set, format, out, config, sweep;
    std::vector<std::string> params;
    int levels = 0, n = 0;
    double tol = 0.0;
    bool normalize = false;
};

bool accepts(const CaseDescriptor& d, const std::string& key) {
    return std::find(d.params.begin(), d.params.end(), key) != d.params.end();
}

void validate(RunConfig& cfg) {
    bool needs_case = cfg.command != Command::List;
    if (needs_case && cfg.case_id.empty()) throw UsageError("--case is required for this command");
    bool all = cfg.case_id == "all";
    if (all && (cfg.command == Command::Potential || cfg.command == Command::Wavefunction ||
                cfg.command == Command::Sweep))
        throw UsageError("--case all is not supported for this command");
    if (!cfg.case_id.empty() && !all) {
        CaseId id;
        try {
            id = case_from_string(cfg.case_id);
        } catch (const Error&) {
            throw UsageError("--case: unknown case '" + cfg.case_id + "'");
        }
        const auto& d = describe(id);
        for (const auto& [key, value] : cfg.params)
            if (!accepts(d, key)) throw UsageError("--param: case " + cfg.case_id + " has no parameter '" + key + "'");
        if (cfg.sweep && !accepts(d, cfg.sweep->key))
            throw UsageError("--sweep: case " + cfg.case_id + " has no parameter '" + cfg.sweep->key + "'");
    } else if (all) {
        for (const auto& [key, value] : cfg.params) {
            bool any = false;
            for (CaseId id : all_cases()) any = any || accepts(describe(id), key);
            if (!any) throw UsageError("--param: no case has a parameter '" + key + "'");
        }
    }
    if (cfg.command == Command::Sweep && !cfg.sweep) throw UsageError("--sweep is required for the sweep command");
    if (cfg.levels && *cfg.levels < 1) throw UsageError("--levels: must be at least 1");
    if (cfg.n < 0) throw UsageError("--n: must be non-negative");
    if (!(cfg.tol > 0.0)) throw UsageError("--tol: must be positive");
}

void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot read '" + path + "'");
    std::string line;
    int lineno = 0;
    Params file_params;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("--config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto unset = [&app](const char* flag) { return app.count(flag) == 0; };
        if (key == "case") {
            if (unset("--case")) cfg.case_id = value;
        } else if (key == "levels") {
            if (unset("--levels")) cfg.levels = parse_int("--levels", value);
        } else if (key == "l-set") {
            if (unset("--l-set")) cfg.l_set = parse_lset(value);
        } else if (key == "grid") {
            if (unset("--grid")) cfg.grid = parse_grid(value);
        } else if (key == "tol") {
            if (unset("--tol")) cfg.tol = parse_double("--tol", value);
        } else if (key == "format") {
            if (unset("--format")) cfg.format = parse_format(value);
        } else if (key == "out") {
            if (unset("--out")) cfg.out = value;
        } else if (key == "n") {
            if (unset("--n")) cfg.n = parse_int("--n", value);
        } else if (key == "normalize") {
            if (unset("--normalize")) cfg.normalize = value == "1" || value == "true";
        } else if (key == "sweep") {
            if (unset("--sweep")) cfg.sweep = parse_sweep(value);
        } else {
            file_params[key] = parse_double("--config " + key, value);
        }
    }
    for (const auto& [key, value] : file_params) cfg.params.emplace(key, value);
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Position-dependent mass models by point canonical transformation", "pdm_cli"};
    RawOptions raw;
    app.add_option("command", raw.command, "list | potential | spectrum | wavefunction | verify | sweep")->required();
    app.add_option("--case", raw.case_id, "case id, or 'all'");
    app.add_option("--param", raw.params, "parameter key=value (repeatable)")->allow_extra_args(false);
    app.add_option("--levels", raw.levels, "number of levels n = 0..N-1");
    app.add_option("--l-set", raw.l_set, "comma separated angular momenta");
    app.add_option("--grid", raw.grid, "left:right:points (use --grid=... for a negative left end)");
    app.add_option("--tol", raw.tol, "verification tolerance (relative)");
    app.add_option("--format", raw.format, "csv | json");
    app.add_option("--out", raw.out, "output file (default standard output)");
    app.add_option("--config", raw.config, "key=value file; command line wins");
    app.add_option("--sweep", raw.sweep, "key=start:stop:count");
    app.add_option("--n", raw.n, "level for the wavefunction command");
    app.add_flag("--normalize", raw.normalize, "normalize the sampled wavefunction");

    RunConfig cfg;
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.command = parse_command(raw.command);
    cfg.case_id = raw.case_id;
    for (const auto& p : raw.params) {
        auto [key, value] = parse_param(p);
        cfg.params[key] = value;
    }
    if (app.count("--levels")) cfg.levels = raw.levels;
    if (app.count("--l-set")) cfg.l_set = parse_lset(raw.l_set);
    if (app.count("--grid")) cfg.grid = parse_grid(raw.grid);
    if (app.count("--tol")) cfg.tol = raw.tol;
    if (app.count("--format")) cfg.format = parse_format(raw.format);
    cfg.out = raw.out;
    if (app.count("--sweep")) cfg.sweep = parse_sweep(raw.sweep);
    cfg.n = raw.n;
    cfg.normalize = raw.normalize;
    if (app.count("--config")) apply_config_file(raw.config, cfg, app);
    validate(cfg);
    return cfg;
}

namespace {

std::vector<CaseId> selected_cases(const RunConfig& cfg) {
    if (cfg.case_id == "all") return all_cases();
    return {case_from_string(cfg.case_id)};
}

Params params_for(const RunConfig& cfg, CaseId id) {
    Params p;
    const auto& d = describe(id);
    for (const auto& [key, value] : cfg.params)
        if (accepts(d, key)) p[key] = value;
    return p;
}

int levels_for(const RunConfig& cfg, CaseId id) { return cfg.levels.value_or(describe(id).default_levels); }

std::vector<int> l_set_for(const RunConfig& cfg, const TargetModel& model) {
    if (model.radial() && cfg.l_set) return *cfg.l_set;
    return model.default_l();
}

int first_l(const RunConfig& cfg, const TargetModel& model) {
    if (!model.radial()) return 0;
    return l_set_for(cfg, model).front();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

double printed_or_nan(const TargetModel& m, int n, int l) {
    try {
        return m.energy_printed(n, l);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

nlohmann::ordered_json num_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string cmd_list(const RunConfig& cfg) {
    auto cases = list_cases();
    if (cfg.format == Format::Json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& d : cases) {
            nlohmann::ordered_json o;
            o["id"] = d.id;
            o["description"] = d.description;
            o["params"] = d.params;
            nlohmann::ordered_json defaults = nlohmann::ordered_json::object();
            for (const auto& [k, v] : d.defaults) defaults[k] = v;
            o["defaults"] = defaults;
            o["constraints"] = d.constraints;
            o["equations"] = {{"potential", d.equations[0]}, {"spectrum", d.equations[1]},
                              {"wavefunction", d.equations[2]}};
            o["default_l"] = d.default_l;
            o["default_grid"] = {{"left", d.default_grid.left}, {"right", d.default_grid.right},
                                 {"points", d.default_grid.points}};
            arr.push_back(o);
        }
        return dump(arr);
    }
    std::string s = "id,description,params,constraints,v_equation,e_equation,phi_equation\n";
    for (const auto& d : cases)
        s += d.id + "," + csv_escape(d.description) + "," + join(d.params, ";") + "," + csv_escape(d.constraints) +
             "," + std::to_string(d.equations[0]) + "," + std::to_string(d.equations[1]) + "," +
             std::to_string(d.equations[2]) + "\n";
    return s;
}

std::string cmd_spectrum(const RunConfig& cfg) {
    bool all = cfg.case_id == "all";
    std::string csv = std::string(all ? "case," : "") + "n,l,E_construction,E_printed\n";
    auto arr = nlohmann::ordered_json::array();
    for (CaseId id : selected_cases(cfg)) {
        TargetModel m = make_model(id, params_for(cfg, id));
        Spectrum sp = eval_spectrum(m, levels_for(cfg, id) - 1, l_set_for(cfg, m));
        nlohmann::ordered_json o;
        o["case"] = to_string(id);
        auto levels = nlohmann::ordered_json::array();
        for (const auto& e : sp.entries) {
            double p = printed_or_nan(m, e.n, e.l);
            csv += (all ? to_string(id) + "," : "") + std::to_string(e.n) + "," + std::to_string(e.l) + "," +
                   format_number(e.energy) + "," + format_number(p) + "\n";
            levels.push_back({{"n", e.n}, {"l", e.l}, {"E_construction", num_json(e.energy)}, {"E_printed", num_json(p)}});
        }
        o["levels"] = levels;
        arr.push_back(o);
    }
    if (cfg.format == Format::Csv) return csv;
    if (!all) return dump(arr[0]);
    return dump({{"cases", arr}, {"generated_by", kGeneratedBy}});
}

std::string sampled(const RunConfig& cfg, const std::string& cid, int l, const std::vector<double>& x,
                    const std::vector<double>& v) {
    if (cfg.format == Format::Json) {
        nlohmann::ordered_json o;
        o["case"] = cid;
        o["l"] = l;
        auto pts = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < x.size(); ++i) pts.push_back({{"x", x[i]}, {"value", num_json(v[i])}});
        o["points"] = pts;
        return dump(o);
    }
    std::string s = "x,value\n";
    for (std::size_t i = 0; i < x.size(); ++i) s += format_number(x[i]) + "," + format_number(v[i]) + "\n";
    return s;
}

std::string cmd_potential(const RunConfig& cfg) {
    CaseId id = case_from_string(cfg.case_id);
    TargetModel m = make_model(id, params_for(cfg, id));
    Grid g = cfg.grid.value_or(describe(id).default_grid);
    int l = first_l(cfg, m);
    std::vector<double> x, v;
    for (int i = 0; i < g.points; ++i) {
        x.push_back(g.x(i));
        v.push_back(m.domain().contains(x.back()) ? m.potential(x.back(), l)
                                                  : std::numeric_limits<double>::quiet_NaN());
    }
    return sampled(cfg, cfg.case_id, l, x, v);
}

std::string cmd_wavefunction(const RunConfig& cfg) {
    CaseId id = case_from_string(cfg.case_id);
    TargetModel m = make_model(id, params_for(cfg, id));
    Grid g = cfg.grid.value_or(describe(id).default_grid);
    int l = first_l(cfg, m);
    GridFunction f = eval_wavefunction(m, cfg.n, l, g, cfg.normalize);
    return sampled(cfg, cfg.case_id, l, f.x, f.values);
}

VerificationReport verify_one(const RunConfig& cfg, CaseId id, const Params& params) {
    TargetModel m = make_model(id, params);
    Grid g = cfg.grid.value_or(describe(id).default_grid);
    return verify_model(m, g, levels_for(cfg, id) - 1, l_set_for(cfg, m), cfg.tol);
}

std::pair<std::string, bool> cmd_verify(const RunConfig& cfg) {
    std::vector<std::future<VerificationReport>> jobs;
    for (CaseId id : selected_cases(cfg))
        jobs.push_back(std::async(std::launch::async, verify_one, std::cref(cfg), id, params_for(cfg, id)));
    std::vector<VerificationReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());
    bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.all_pass(); });
    bool all = cfg.case_id == "all";
    if (cfg.format == Format::Csv) return {to_csv(reports, all), ok};
    if (!all) return {dump(to_json(reports[0])), ok};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return {dump({{"reports", arr}, {"generated_by", kGeneratedBy}}), ok};
}

struct SweepPoint {
    double value = 0.0;
    std::optional<VerificationReport> report;
    std::string error;
};

std::pair<std::string, bool> cmd_sweep(const RunConfig& cfg, std::ostream& err) {
    CaseId id = case_from_string(cfg.case_id);
    const SweepSpec& sw = *cfg.sweep;
    std::vector<std::future<SweepPoint>> jobs;
    for (double v : sw.values()) {
        Params p = params_for(cfg, id);
        p[sw.key] = v;
        jobs.push_back(std::async(std::launch::async, [&cfg, id, p, v]() {
            SweepPoint pt;
            pt.value = v;
            try {
                pt.report = verify_one(cfg, id, p);
            } catch (const ParameterError& e) {
                pt.error = e.what();
            } catch (const DomainError& e) {
                pt.error = e.what();
            }
            return pt;
        }));
    }
    std::vector<SweepPoint> pts;
    for (auto& j : jobs) pts.push_back(j.get());
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.value < b.value; });

    bool ok = true;
    for (const auto& p : pts) {
        if (p.report) ok = ok && p.report->all_pass();
        else err << "sweep " << sw.key << "=" << format_number(p.value) << ": " << p.error << "\n";
    }
    if (cfg.format == Format::Csv) {
        std::string s = csv_escape(sw.key) + "," + csv_header(false) + "\n";
        for (const auto& p : pts)
            if (p.report)
                for (const auto& r : p.report->levels) s += format_number(p.value) + "," + csv_row(*p.report, r, false) + "\n";
        return {s, ok};
    }
    nlohmann::ordered_json o;
    o["case"] = cfg.case_id;
    o["sweep"] = {{"key", sw.key}, {"start", sw.start}, {"stop", sw.stop}, {"count", sw.count}};
    auto points = nlohmann::ordered_json::array();
    auto summary = nlohmann::ordered_json::array();
    for (const auto& p : pts) {
        nlohmann::ordered_json e;
        e["value"] = p.value;
        nlohmann::ordered_json s;
        s["value"] = p.value;
        if (p.report) {
            e["report"] = to_json(*p.report);
            ReportSummary rs = summarize(*p.report);
            s["levels"] = rs.levels;
            s["failed"] = rs.failed;
            s["all_pass"] = rs.all_pass;
        } else {
            e["error"] = p.error;
            s["error"] = p.error;
        }
        points.push_back(e);
        summary.push_back(s);
    }
    o["points"] = points;
    o["summary"] = summary;
    o["generated_by"] = kGeneratedBy;
    return {dump(o), ok};
}

int emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
    if (cfg.out.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << cfg.out << "'\n";
        return 1;
    }
    f << text;
    return f ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.help) {
        out << cfg.help_text;
        return 0;
    }
    try {
        std::string text;
        bool ok = true;
        switch (cfg.command) {
            case Command::List: text = cmd_list(cfg); break;
            case Command::Potential: text = cmd_potential(cfg); break;
            case Command::Spectrum: text = cmd_spectrum(cfg); break;
            case Command::Wavefunction: text = cmd_wavefunction(cfg); break;
            case Command::Verify: std::tie(text, ok) = cmd_verify(cfg); break;
            case Command::Sweep: std::tie(text, ok) = cmd_sweep(cfg, err); break;
        }
        int rc = emit(cfg, text, out, err);
        if (rc != 0) return rc;
        if (!ok) {
            err << "verification failed for at least one level\n";
            return 1;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return run(cfg, std::cout, std::cerr);
}

}  // namespace pdm
