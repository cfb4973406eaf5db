// adlab: batch driver over the library modules.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "adlab/adeg/approx_degree.hpp"
#include "adlab/adeg/sweep.hpp"
#include "adlab/adversary/witness.hpp"
#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/errors.hpp"
#include "adlab/gamma2/gamma2.hpp"
#include "adlab/interp/lagrange.hpp"
#include "adlab/poly/robustness.hpp"
#include "adlab/util/format.hpp"
#include "adlab/util/parallel.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace adlab;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCheck = 4;

struct Config {
    std::string command;
    std::string n, d, size;
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    std::string fn, inner, outer, table, named, out, format;
    std::string spec;  // inline sweep specification, used in place of --table
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    double tol_psd = 1e-8;
    double tol_constraint = 1e-6;
    bool dry_run = false;
    bool unbounded = false;
    std::string mode = "exact";
    bool include_factorization = false;
    double delta = 0.1;
    std::string box = "full";
    std::size_t samples = 100000;
    std::size_t corpus = 6;
    std::size_t quadrature = 200;
};

// Result rows plus the worst status met while producing them.
struct Table {
    std::vector<json> rows;
    int status = 0;
    std::vector<std::string> plan;  // filled instead of rows on --dry-run
};

std::vector<std::size_t> parse_range(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    auto number = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (s.empty() || pos != s.size() || s[0] == '-')
            throw InputError(std::string("--") + flag + ": '" + s + "' is not a non-negative integer");
        return std::size_t(v);
    };
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(part));
            continue;
        }
        const std::size_t lo = number(part.substr(0, dots)), hi = number(part.substr(dots + 2));
        if (lo > hi) throw InputError(std::string("--") + flag + ": empty range " + part);
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw InputError(std::string("--") + flag + " is required");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep))
        if (!part.empty()) out.push_back(part);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number()) return fmt_num(v.get<double>());
    if (v.is_string()) return csv_field(v.get<std::string>());
    if (v.is_array()) {
        std::vector<std::string> parts;
        for (const auto& e : v) parts.push_back(e.is_string() ? e.get<std::string>() : cell(e));
        return csv_field(join(parts, ";"));
    }
    return csv_field(v.dump());
}

std::string render(const std::vector<json>& rows, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(r);
        return arr.dump(2) + "\n";
    }
    std::string out;
    if (rows.empty()) return out;
    std::vector<std::string> header;
    for (const auto& [k, v] : rows.front().items()) header.push_back(k);
    out += join(header, ",") + "\n";
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (const auto& k : header) cells.push_back(r.contains(k) ? cell(r[k]) : "");
        out += join(cells, ",") + "\n";
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

double num(double v) { return round12(v); }

json failure_row(const std::string& instance, const std::exception& e) {
    json r;
    r["instance"] = instance;
    r["status"] = "failed";
    r["error"] = e.what();
    return r;
}

// Runs one solve per instance on the worker pool; solver failures become flagged rows.
template <class F>
Table fan_out(const std::vector<std::string>& names, std::size_t jobs, F solve) {
    Table t;
    std::vector<json> rows(names.size());
    std::vector<int> status(names.size(), 0);
    parallel_for(names.size(), jobs, [&](std::size_t i) {
        try {
            rows[i] = solve(i);
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            rows[i] = failure_row(names[i], e);
            status[i] = kExitSolver;
        }
    });
    t.rows = std::move(rows);
    for (int s : status) t.status = std::max(t.status, s);
    return t;
}

Table planned(std::vector<std::string> names) {
    Table t;
    t.plan = std::move(names);
    return t;
}

double epsilon_or(const Config& c, double fallback) { return std::isnan(c.epsilon) ? fallback : c.epsilon; }

// ---------------------------------------------------------------- adeg

Table run_adeg(const Config& c) {
    const double eps = epsilon_or(c, 1.0 / 3.0);
    if (!(eps > 0.0 && eps < 0.5)) throw InputError("--epsilon must lie in (0, 1/2)");
    std::vector<PartialFn> fns;
    if (!c.table.empty()) {
        fns.push_back(read_truth_table(c.table));
    } else {
        if (c.fn.empty()) throw InputError("adeg: give --fn with --n, or --table");
        for (std::size_t n : parse_range(c.n, "n")) fns.push_back(build_named(c.fn, n));
    }
    std::vector<std::string> names;
    for (const auto& f : fns) names.push_back(f.name().empty() ? "table" : f.name());
    if (c.dry_run) return planned(names);

    AdegOptions opt;
    opt.bounded = !c.unbounded;
    return fan_out(names, c.jobs, [&](std::size_t i) {
        const auto r = approx_degree(fns[i], eps, opt);
        json row;
        row["function"] = names[i];
        row["arity"] = fns[i].arity();
        row["epsilon"] = num(eps);
        row["bounded"] = opt.bounded;
        row["degree"] = r.degree;
        row["achieved_error"] = num(r.achieved_error);
        row["bound_violation"] = num(r.bound_violation);
        json errs = json::array();
        for (double e : r.errors_by_degree) errs.push_back(num(e));
        row["errors_by_degree"] = errs;
        row["certified_error"] = r.certificate ? json(num(r.certificate->certified_error)) : json(nullptr);
        return row;
    });
}

// ---------------------------------------------------------------- sweep

Table run_sweep(const Config& c) {
    std::vector<SweepInstance> spec;
    if (!c.spec.empty()) {
        spec = parse_sweep_spec(c.spec);
    } else if (!c.table.empty()) {
        spec = parse_sweep_spec(read_file(c.table));
    } else {
        if (c.outer.empty() || c.inner.empty()) throw InputError("sweep: give --table, or --outer, --inner and --n");
        const auto inner = split(c.inner, ',');
        for (std::size_t n : parse_range(c.n, "n")) {
            SweepInstance inst;
            inst.outer = c.outer + "_" + std::to_string(n);
            if (inner.size() == 1) inst.inner.assign(n, inner[0]);
            else if (inner.size() == n) inst.inner = inner;
            else throw InputError("sweep: --inner needs one reference or one per outer input");
            spec.push_back(inst);
        }
        // Validate through the same parser as table input.
        json arr = json::array();
        for (const auto& s : spec) arr.push_back({{"outer", s.outer}, {"inner", s.inner}});
        spec = parse_sweep_spec(arr.dump());
    }
    for (auto& s : spec) {
        if (!std::isnan(c.epsilon)) s.epsilon = c.epsilon;
        if (c.unbounded) s.bounded = false;
    }
    if (c.dry_run) {
        Table t;
        for (const auto& s : spec) t.plan.push_back(s.outer + "(" + join(s.inner, ",") + ")");
        return t;
    }
    const auto rows = composition_sweep(spec, c.jobs);
    Table t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        json row;
        row["instance"] = r.instance;
        row["arity"] = r.arity;
        row["epsilon"] = num(spec[i].epsilon);
        row["bounded"] = spec[i].bounded;
        row["adeg_outer"] = r.adeg_outer ? json(*r.adeg_outer) : json(nullptr);
        row["adeg_inner"] = r.adeg_inner;
        row["adeg_composed"] = r.adeg_composed ? json(*r.adeg_composed) : json(nullptr);
        row["ratio"] = num(r.ratio);
        row["tag"] = r.tag;
        row["skipped"] = r.skipped;
        row["note"] = r.note;
        if (r.skipped) t.status = std::max(t.status, kExitSolver);
        t.rows.push_back(row);
    }
    return t;
}

// ---------------------------------------------------------------- witness

Table run_witness(const Config& c) {
    const auto ns = parse_range(c.n, "n");
    for (std::size_t n : ns) {
        if (n == 0) throw InputError("witness: n must be at least 1");
        if (n > kMaxWitnessN) throw InputError("witness: n above " + std::to_string(kMaxWitnessN));
    }
    if (!(c.tol_psd > 0.0) || !(c.tol_constraint > 0.0)) throw InputError("tolerances must be positive");
    if (c.dry_run) {
        Table t;
        for (std::size_t n : ns) t.plan.push_back("witness n=" + std::to_string(n));
        return t;
    }
    Table t;
    for (std::size_t n : ns) {
        const auto w = build_witness(n, c.jobs);
        auto r = verify(w, c.tol_psd, c.tol_constraint, c.jobs);
        if (n <= 6 && c.quadrature > 0) r.quadrature_dev = quadrature_crosscheck(w, c.quadrature, c.seed);
        if (!(r.psd_ok && r.constraint_ok && r.objective_ok)) t.status = std::max(t.status, kExitCheck);
        t.rows.push_back(json::parse(to_json(r)));
    }
    return t;
}

// ---------------------------------------------------------------- gamma2

Table run_gamma2(const Config& c) {
    if (c.mode != "exact" && c.mode != "approx") throw InputError("--mode must be exact or approx");
    const double eps = epsilon_or(c, 2.0 / 3.0);
    if (c.mode == "approx" && !(eps > 0.0 && eps < 1.0)) throw InputError("--epsilon must lie in (0, 1)");

    struct Instance {
        std::string name;
        std::optional<SignMatrix> sign;
        DenseMatrix real;
    };
    std::vector<Instance> inst;
    if (!c.table.empty()) {
        auto s = read_sign_matrix(c.table);
        inst.push_back({fs::path(c.table).filename().string(), s, s.dense()});
    } else {
        if (c.named.empty()) throw InputError("gamma2: give --named or --table");
        const std::string name = c.named;
        const bool by_size = name == "J" || name == "I" || (name == "NOTEQ" && !c.size.empty());
        if (by_size) {
            for (std::size_t k : parse_range(c.size, "size")) {
                if (k == 0) throw InputError("--size must be at least 1");
                if (k > kMaxGamma2Exact) throw InputError("--size above " + std::to_string(kMaxGamma2Exact));
                const std::string label = name + "_" + std::to_string(k);
                if (name == "J") inst.push_back({label, std::nullopt, DenseMatrix::ones(k, k)});
                else if (name == "I") inst.push_back({label, std::nullopt, DenseMatrix::identity(k)});
                else inst.push_back({label, noteq(k), noteq(k).dense()});
            }
        } else {
            for (std::size_t n : parse_range(c.n, "n")) {
                auto s = build_comm(name, n);
                inst.push_back({name + "_" + std::to_string(n), s, s.dense()});
            }
        }
    }
    for (const auto& i : inst)
        if (c.mode == "approx" && !i.sign) throw InputError("gamma2: approx mode needs a sign matrix (" + i.name + ")");
    std::vector<std::string> names;
    for (const auto& i : inst) names.push_back(i.name);
    if (c.dry_run) return planned(names);

    return fan_out(names, c.jobs, [&](std::size_t k) {
        const auto& i = inst[k];
        json row;
        row["instance"] = i.name;
        row["rows"] = i.real.rows();
        row["cols"] = i.real.cols();
        row["mode"] = c.mode;
        row["epsilon"] = nullptr;
        if (c.mode == "exact") {
            const auto r = gamma2_exact(i.real);
            const auto parsed = json::parse(to_json(r, c.include_factorization));
            for (const auto& [key, v] : parsed.items()) row[key] = v;
        } else {
            const auto r = approx_gamma2(*i.sign, eps);
            const auto parsed = json::parse(to_json(r, c.include_factorization));
            for (const auto& [key, v] : parsed.items()) row[key] = v;
            if (c.format == "csv") row.erase("approximant");
        }
        return row;
    });
}

// ---------------------------------------------------------------- interp

Table run_interp(const Config& c) {
    const auto ns = parse_range(c.n, "n");
    const auto ds = parse_range(c.d, "d");
    std::vector<std::pair<std::size_t, std::size_t>> grids;
    for (std::size_t n : ns)
        for (std::size_t d : ds) {
            if (n == 0 || d == 0) throw InputError("interp: n and d must be at least 1");
            if (grid_size(n, d) > kMaxGridSize)
                throw InputError("interp: grid n=" + std::to_string(n) + ", d=" + std::to_string(d) + " is too large");
            grids.push_back({n, d});
        }
    std::optional<MultiPoly> given;
    if (!c.table.empty()) given = read_poly(c.table);
    std::vector<std::string> names;
    for (auto [n, d] : grids) names.push_back("n=" + std::to_string(n) + " d=" + std::to_string(d));
    if (c.dry_run) return planned(names);

    return fan_out(names, c.jobs, [&](std::size_t k) {
        const auto [n, d] = grids[k];
        json row;
        row["n"] = n;
        row["d"] = d;
        row["points"] = grid_size(n, d);
        row["kronecker_deviation"] = num(kronecker_check(n, d).max_deviation);
        // The expanded monomial basis is only trusted on small grids.
        const bool small = n + d <= 9;
        const auto basis = build_basis(n, d, {.verify = small, .trials = 50, .seed = c.seed});
        row["kronecker_error"] = basis.kronecker_error ? json(num(*basis.kronecker_error)) : json(nullptr);
        row["interpolation_error"] = basis.interpolation_error ? json(num(*basis.interpolation_error)) : json(nullptr);
        std::vector<MultiPoly> polys;
        if (given) {
            polys.push_back(*given);
        } else if (n + d <= 8) {
            polys = bounded_corpus(n, d, c.corpus, c.seed * 1000 + 100 * n + d);
        }
        std::size_t violations = 0;
        double ratio_thm = 0.0, ratio_l1 = 0.0, ratio_prop = 0.0;
        for (const auto& p : polys) {
            const auto r = check_coeff_bounds(p, n, d, &basis);
            violations += r.violations.size();
            ratio_thm = std::max(ratio_thm, r.coeff_max / r.bound_thm);
            ratio_l1 = std::max(ratio_l1, r.coeff_l1 / r.bound_l1);
            ratio_prop = std::max(ratio_prop, r.per_basis_max / r.bound_prop);
        }
        row["polynomials"] = polys.size();
        row["violations"] = violations;
        row["max_coeff_ratio"] = num(ratio_thm);
        row["max_l1_ratio"] = num(ratio_l1);
        row["max_basis_ratio"] = num(ratio_prop);
        return row;
    });
}

// ---------------------------------------------------------------- robust

Table run_robust(const Config& c) {
    if (c.fn.empty()) throw InputError("robust: --fn and --n name the target function");
    const auto ns = parse_range(c.n, "n");
    if (ns.size() != 1) throw InputError("robust: --n takes a single value");
    const auto h = build_named(c.fn, ns[0]);
    if (!(c.delta >= 0.0)) throw InputError("--delta must be non-negative");
    if (c.box != "full" && c.box != "unit") throw InputError("--box must be full or unit");
    const MultiPoly p = c.table.empty() ? multilinear_extension(h) : read_poly(c.table);
    const std::string source = c.table.empty() ? "multilinear_extension" : fs::path(c.table).filename().string();
    if (c.dry_run) return planned({"robust " + h.name() + " delta=" + fmt_num(c.delta) + " box=" + c.box});

    const auto r = robustness_margin(p, h, c.delta, c.samples, c.seed,
                                     c.box == "unit" ? PerturbationBox::Unit : PerturbationBox::Full);
    json row;
    row["function"] = h.name();
    row["polynomial"] = source;
    row["delta"] = num(c.delta);
    row["box"] = c.box;
    row["margin"] = num(r.margin);
    row["exact"] = r.exact;
    row["samples"] = r.samples;
    row["worst_x"] = r.worst_x;
    row["worst_signs"] = r.worst_signs;
    Table t;
    t.rows.push_back(row);
    return t;
}

// ---------------------------------------------------------------- output

std::string default_extension(const Config& c) { return c.format == "json" ? ".json" : ".csv"; }

int emit(const Config& c, const Table& t) {
    if (c.dry_run) {
        for (const auto& p : t.plan) std::cout << p << "\n";
        return 0;
    }
    const std::string text = render(t.rows, c.format);
    std::string path = c.out;
    if (path.empty()) {
        if (const char* dir = std::getenv("ADLAB_OUT_DIR"); dir && *dir)
            path = (fs::path(dir) / (c.command + default_extension(c))).string();
    }
    if (path.empty()) std::cout << text;
    else write_text(path, text);
    if (t.status == kExitSolver) std::cerr << "adlab: some instances failed; see the flagged rows\n";
    if (t.status == kExitCheck) std::cerr << "adlab: a verification check did not pass\n";
    return t.status;
}

Table dispatch(const Config& c) {
    if (c.command == "adeg") return run_adeg(c);
    if (c.command == "sweep") return run_sweep(c);
    if (c.command == "witness") return run_witness(c);
    if (c.command == "gamma2") return run_gamma2(c);
    if (c.command == "interp") return run_interp(c);
    if (c.command == "robust") return run_robust(c);
    throw InputError("unknown subcommand " + c.command);
}

// ---------------------------------------------------------------- battery

std::vector<Config> battery_plan(const Config& base) {
    auto make = [&](std::string cmd, std::string file, std::string format) {
        Config c;
        c.command = std::move(cmd);
        c.out = (fs::path(base.out) / file).string();
        c.format = std::move(format);
        c.jobs = base.jobs;
        c.seed = base.seed;
        c.dry_run = base.dry_run;
        return c;
    };
    std::vector<Config> plan;
    for (bool unb : {false, true}) {
        auto c = make("adeg", unb ? "adeg_or_unbounded.csv" : "adeg_or.csv", "csv");
        c.fn = "OR";
        c.n = "1..10";
        c.unbounded = unb;
        plan.push_back(c);
    }
    {
        auto c = make("adeg", "adeg_xor.csv", "csv");
        c.fn = "XOR";
        c.n = "1..8";
        plan.push_back(c);
    }
    for (bool unb : {false, true}) {
        auto c = make("adeg", unb ? "adeg_pror_unbounded.csv" : "adeg_pror.csv", "csv");
        c.fn = "PrOR";
        c.n = "1..8";
        c.unbounded = unb;
        plan.push_back(c);
    }
    {
        auto c = make("sweep", "sweep_xor_and.csv", "csv");
        c.outer = "XOR";
        c.inner = "AND_2";
        c.n = "1..5";
        plan.push_back(c);
    }
    {
        auto c = make("witness", "witness.json", "json");
        c.n = "1..8";
        plan.push_back(c);
    }
    {
        auto c = make("interp", "interp.csv", "csv");
        c.n = "1..7";
        c.d = "1..7";
        plan.push_back(c);
    }
    for (std::string name : {"J", "I"}) {
        auto c = make("gamma2", "gamma2_" + name + ".csv", "csv");
        c.named = name;
        c.size = "1..8";
        plan.push_back(c);
    }
    {
        auto c = make("gamma2", "gamma2_noteq.csv", "csv");
        c.named = "NOTEQ";
        c.size = "1..8";
        c.mode = "approx";
        plan.push_back(c);
    }
    {
        auto c = make("gamma2", "gamma2_disj.json", "json");
        c.named = "DISJ";
        c.n = "1..4";
        c.mode = "approx";
        plan.push_back(c);
    }
    {
        auto c = make("gamma2", "gamma2_ip.csv", "csv");
        c.named = "IP";
        c.n = "1..3";
        plan.push_back(c);
    }
    for (std::string box : {"full", "unit"}) {
        auto c = make("robust", "robust_or2_" + box + ".json", "json");
        c.fn = "OR";
        c.n = "2";
        c.box = box;
        plan.push_back(c);
    }
    return plan;
}

int run_battery(const Config& base) {
    if (base.out.empty()) throw InputError("battery: --out <dir> or ADLAB_OUT_DIR is required");
    int status = 0;
    for (const auto& c : battery_plan(base)) {
        if (c.dry_run) std::cout << "# " << fs::path(c.out).filename().string() << "\n";
        status = std::max(status, emit(c, dispatch(c)));
    }
    // Tables whose instances do not follow a single --outer/--inner pattern go through a spec.
    auto spec_sweep = [&](const std::string& file, const json& spec) {
        Config c = base;
        c.command = "sweep";
        c.format = "csv";
        c.spec = spec.dump();
        c.out = (fs::path(base.out) / file).string();
        if (c.dry_run) std::cout << "# " << file << "\n";
        status = std::max(status, emit(c, dispatch(c)));
    };
    json or_and = json::array();
    for (std::size_t b = 1; b <= 12; ++b)
        for (std::size_t a = 1; a * b <= 12; ++a)
            or_and.push_back({{"outer", "OR_" + std::to_string(a)}, {"inner", std::vector<std::string>(a, "AND_" + std::to_string(b))}});
    spec_sweep("sweep_or_and.csv", or_and);

    json unbalanced = json::array();
    const std::vector<std::string> inner = {"AND_2", "XOR_2", "MAJ_3"};
    for (bool bounded : {true, false})
        for (const auto& x : inner)
            for (const auto& y : inner) unbalanced.push_back({{"outer", "OR_2"}, {"inner", {x, y}}, {"bounded", bounded}});
    spec_sweep("sweep_unbalanced.csv", unbalanced);
    return status;
}

// ---------------------------------------------------------------- CLI wiring

void add_common(CLI::App* sub, Config& c, const std::string& default_format) {
    sub->add_option("--out", c.out, "Output path (default: $ADLAB_OUT_DIR/<command>.<ext>, else stdout)");
    sub->add_option("--format", c.format, "csv or json (default " + default_format + ")")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", c.jobs, "Worker threads (default: available cores)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Seed for randomized steps");
    sub->add_flag("--dry-run", c.dry_run, "Validate the configuration and list the planned instances");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adlab: approximate degree, adversary, gamma2 and interpolation experiments"};
    app.require_subcommand(1);
    Config cfg;

    auto* adeg = app.add_subcommand("adeg", "Approximate degree of named functions or a truth table.\n"
                                            "CSV: function,arity,epsilon,bounded,degree,achieved_error,"
                                            "bound_violation,errors_by_degree,certified_error");
    add_common(adeg, cfg, "csv");
    adeg->add_option("--fn", cfg.fn, "OR, AND, XOR, NAND, MAJ, PrOR, PrTH(k), ZERO, ONE");
    adeg->add_option("--n", cfg.n, "Arity: 3, 1..10 or 2,4,8");
    adeg->add_option("--table", cfg.table, "Truth-table file instead of --fn");
    adeg->add_option("--epsilon", cfg.epsilon, "Target error (default 1/3)");
    adeg->add_flag("--unbounded", cfg.unbounded, "Drop the [0,1] constraint off the promise");

    auto* sweep = app.add_subcommand("sweep", "Composition sweep.\n"
                                              "CSV: instance,arity,epsilon,bounded,adeg_outer,adeg_inner,adeg_composed,ratio,tag,"
                                              "skipped,note");
    add_common(sweep, cfg, "csv");
    sweep->add_option("--table", cfg.table, "JSON sweep specification");
    sweep->add_option("--outer", cfg.outer, "Outer function name, arity taken from --n");
    sweep->add_option("--inner", cfg.inner, "Inner reference, or comma-separated list with one per outer input");
    sweep->add_option("--n", cfg.n, "Outer arities");
    sweep->add_option("--epsilon", cfg.epsilon, "Target error for every instance");
    sweep->add_flag("--unbounded", cfg.unbounded, "Use the plain LP for every instance");

    auto* witness = app.add_subcommand("witness", "Build and verify the adversary witness family.\n"
                                                  "CSV: n,min_eig,max_constraint_dev,objective,pi_sqrt_n,objective_gap,"
                                                  "diagonal_dev,quadrature_dev,psd_ok,constraint_ok,objective_ok.\n"
                                                  "Exit 4 when a check fails.");
    add_common(witness, cfg, "json");
    witness->add_option("--n", cfg.n, "Sizes, e.g. 1..8")->required();
    witness->add_option("--tol-psd", cfg.tol_psd, "Relative eigenvalue tolerance");
    witness->add_option("--tol-constraint", cfg.tol_constraint, "Pairwise constraint tolerance");
    witness->add_option("--quadrature", cfg.quadrature, "Entries re-integrated numerically for n <= 6 (0: skip)");

    auto* gamma2 = app.add_subcommand("gamma2", "Exact or approximate gamma2 norm.\n"
                                                "CSV: instance,rows,cols,mode,epsilon,value,factor_value,residual,...");
    add_common(gamma2, cfg, "json");
    gamma2->add_option("--named", cfg.named, "J, I (with --size), NOTEQ (--size k elements or --n bits), DISJ, IP, EQ")
        ->check(CLI::IsMember({"J", "I", "NOTEQ", "DISJ", "IP", "EQ"}));
    gamma2->add_option("--n", cfg.n, "Bits per party for DISJ, IP, NOTEQ, EQ");
    gamma2->add_option("--size", cfg.size, "Matrix side for J, I, NOTEQ");
    gamma2->add_option("--table", cfg.table, "Sign-matrix file");
    gamma2->add_option("--mode", cfg.mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
    gamma2->add_option("--epsilon", cfg.epsilon, "Approximation error (default 2/3)");
    gamma2->add_flag("--include-factorization", cfg.include_factorization, "Add the factors to JSON output");

    auto* interp = app.add_subcommand("interp", "Lagrange basis checks and coefficient bounds.\n"
                                                "CSV: n,d,points,kronecker_deviation,kronecker_error,"
                                                "interpolation_error,polynomials,violations,max_coeff_ratio,"
                                                "max_l1_ratio,max_basis_ratio");
    add_common(interp, cfg, "csv");
    interp->add_option("--n", cfg.n, "Variable counts")->required();
    interp->add_option("--d", cfg.d, "Degrees")->required();
    interp->add_option("--table", cfg.table, "Polynomial JSON to check instead of the bounded corpus");
    interp->add_option("--corpus", cfg.corpus, "Corpus polynomials per grid (n + d <= 8)");

    auto* robust = app.add_subcommand("robust", "Robustness margin of a polynomial for a named function.\n"
                                                "CSV: function,polynomial,delta,box,margin,exact,samples,worst_x,"
                                                "worst_signs");
    add_common(robust, cfg, "json");
    robust->add_option("--fn", cfg.fn, "Target function name")->required();
    robust->add_option("--n", cfg.n, "Target arity")->required();
    robust->add_option("--table", cfg.table, "Polynomial JSON (default: the function's multilinear extension)");
    robust->add_option("--delta", cfg.delta, "Perturbation radius");
    robust->add_option("--box", cfg.box, "full: x + [-delta, delta]^m; unit: intersected with [0,1]^m")
        ->check(CLI::IsMember({"full", "unit"}));
    robust->add_option("--samples", cfg.samples, "Corner samples beyond 16 variables");

    auto* battery = app.add_subcommand("battery", "Regenerate every golden table into a directory.");
    battery->add_option("--out", cfg.out, "Output directory (default: $ADLAB_OUT_DIR)");
    battery->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    battery->add_option("--seed", cfg.seed, "Seed for randomized steps");
    battery->add_flag("--dry-run", cfg.dry_run, "List the planned tables and instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.format.empty()) cfg.format = (cfg.command == "adeg" || cfg.command == "sweep" || cfg.command == "interp") ? "csv" : "json";

    try {
        if (cfg.command == "battery") {
            if (cfg.out.empty())
                if (const char* dir = std::getenv("ADLAB_OUT_DIR"); dir && *dir) cfg.out = dir;
            return run_battery(cfg);
        }
        return emit(cfg, dispatch(cfg));
    } catch (const InputError& e) {
        std::cerr << "adlab: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceError& e) {
        std::cerr << "adlab: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "adlab: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "adlab: " << e.what() << "\n";
        return kExitInput;
    }
}
