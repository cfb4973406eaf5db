#include "adlab/adeg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "adlab/adeg/approx_degree.hpp"
#include "adlab/errors.hpp"
#include "adlab/util/format.hpp"
#include "json.hpp"

namespace adlab {

PartialFn resolve_function(const std::string& ref) {
    if (ref.empty()) throw InputError("empty function reference");
    if (ref.front() == '@') return read_truth_table(ref.substr(1));
    if (ref.rfind("arity=", 0) == 0) return parse_truth_table(ref);
    if (ref == "ID" || ref == "id") return build_named("ID", 1);
    const auto pos = ref.rfind('_');
    if (pos == std::string::npos || pos + 1 == ref.size())
        throw InputError("function reference '" + ref + "' must look like NAME_n");
    std::size_t n = 0;
    const char* first = ref.data() + pos + 1;
    const char* last = ref.data() + ref.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last) throw InputError("function reference '" + ref + "' has a malformed arity");
    return build_named(ref.substr(0, pos), n).renamed(ref);
}

namespace {

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string ref_from_json(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.contains("table")) {
        const auto table = j.at("table").get<std::string>();
        std::size_t m = 0;
        while ((std::size_t{1} << m) < table.size()) ++m;
        if (j.contains("arity")) m = j.at("arity").get<std::size_t>();
        return "arity=" + std::to_string(m) + "\n" + table;
    }
    if (j.is_object() && j.contains("name")) {
        return j.at("name").get<std::string>() + "_" + std::to_string(j.value("n", std::size_t{1}));
    }
    throw InputError("sweep spec: function must be a name string or {table, arity}");
}

std::string label_of(const std::string& ref) {
    if (ref.rfind("arity=", 0) == 0) {
        auto nl = ref.find('\n');
        return "table[" + ref.substr(nl + 1) + "]";
    }
    return ref;
}

}  // namespace

std::string infer_tag(const SweepInstance& inst) {
    const std::string outer = upper(inst.outer);
    const bool homogeneous = std::all_of(inst.inner.begin(), inst.inner.end(),
                                         [&](const std::string& s) { return s == inst.inner.front(); });
    if (outer.rfind("OR_", 0) == 0) return homogeneous ? "or_composition" : "or_heterogeneous";
    if (outer.rfind("XOR_", 0) == 0) return "xor_composition";
    return "sym_composition";
}

double sweep_ratio(const std::string& tag, std::size_t outer_arity, std::size_t adeg_outer,
                   const std::vector<std::size_t>& adeg_inner, std::size_t adeg_composed) {
    const double composed = double(adeg_composed);
    double max_inner = 0.0, sum = 0.0, sum_sq = 0.0;
    for (auto a : adeg_inner) {
        max_inner = std::max(max_inner, double(a));
        sum += double(a);
        sum_sq += double(a) * double(a);
    }
    double denom = std::nan("");
    if (tag == "or_composition") denom = std::sqrt(double(outer_arity)) * max_inner;
    else if (tag == "or_heterogeneous") denom = std::sqrt(sum_sq);
    else if (tag == "xor_composition") denom = sum;
    else if (tag == "sym_composition") denom = double(adeg_outer) * max_inner;
    else if (tag == "bounded_composition") denom = double(adeg_outer) * double(adeg_outer) * max_inner / double(outer_arity);
    if (!(denom > 0.0)) return std::nan("");
    return composed / denom;
}

std::vector<SweepInstance> parse_sweep_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("sweep spec: ") + e.what());
    }
    if (j.is_object() && j.contains("instances")) j = j["instances"];
    if (!j.is_array()) throw InputError("sweep spec: expected a list of instances");
    std::vector<SweepInstance> out;
    for (const auto& item : j) {
        SweepInstance inst;
        try {
            inst.outer = ref_from_json(item.at("outer"));
            for (const auto& f : item.at("inner")) inst.inner.push_back(ref_from_json(f));
            inst.epsilon = item.value("epsilon", 1.0 / 3.0);
            inst.tag = item.value("tag", std::string{});
            inst.bounded = item.value("bounded", true);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("sweep spec: ") + e.what());
        }
        const auto arity = resolve_function(inst.outer).arity();
        if (arity != inst.inner.size()) {
            throw InputError("sweep spec: " + inst.outer + " takes " + std::to_string(arity) + " inner functions, got " +
                             std::to_string(inst.inner.size()));
        }
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<SweepRow> composition_sweep(const std::vector<SweepInstance>& spec, std::size_t jobs) {
    std::vector<SweepRow> rows(spec.size());
    std::mutex cache_mutex;
    std::map<std::tuple<std::vector<std::uint8_t>, double, bool>, std::size_t> cache;

    auto adeg_of = [&](const PartialFn& f, double eps, bool bounded) {
        const auto key = std::make_tuple(f.table(), eps, bounded);
        {
            std::lock_guard lock(cache_mutex);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        AdegOptions opt;
        opt.bounded = bounded;
        const std::size_t d = approx_degree(f, eps, opt).degree;
        std::lock_guard lock(cache_mutex);
        cache.emplace(key, d);
        return d;
    };

    auto run_one = [&](std::size_t i) {
        const auto& inst = spec[i];
        SweepRow row;
        std::vector<std::string> inner_labels;
        for (const auto& s : inst.inner) inner_labels.push_back(label_of(s));
        row.instance = label_of(inst.outer) + "(" + join(inner_labels, ",") + ")";
        row.tag = inst.tag.empty() ? infer_tag(inst) : inst.tag;

        const PartialFn g = resolve_function(inst.outer);
        std::vector<PartialFn> fs;
        for (const auto& s : inst.inner) fs.push_back(resolve_function(s));
        if (fs.size() != g.arity())
            throw InputError("sweep: instance " + row.instance + " needs " + std::to_string(g.arity()) + " inner functions");
        for (const auto& f : fs) row.arity += f.arity();
        if (row.arity > kMaxAdegArity) {
            row.skipped = true;
            row.note = "skipped: composed arity " + std::to_string(row.arity) + " exceeds " + std::to_string(kMaxAdegArity);
            rows[i] = std::move(row);
            return;
        }
        row.adeg_outer = adeg_of(g, inst.epsilon, inst.bounded);
        for (const auto& f : fs) row.adeg_inner.push_back(adeg_of(f, inst.epsilon, inst.bounded));
        row.adeg_composed = adeg_of(compose(g, fs), inst.epsilon, inst.bounded);
        row.ratio = sweep_ratio(row.tag, g.arity(), *row.adeg_outer, row.adeg_inner, *row.adeg_composed);
        rows[i] = std::move(row);
    };

    jobs = std::max<std::size_t>(1, std::min(jobs, spec.size()));
    if (jobs == 1) {
        for (std::size_t i = 0; i < spec.size(); ++i) run_one(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(spec.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < spec.size(); i = next++) {
                try {
                    run_one(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "instance,arity,adeg_outer,adeg_inner_list,adeg_composed,ratio,theorem_tag\n";
    for (const auto& r : rows) {
        std::vector<std::string> inner;
        for (auto a : r.adeg_inner) inner.push_back(std::to_string(a));
        out += csv_field(r.instance) + "," + std::to_string(r.arity) + ",";
        out += (r.adeg_outer ? std::to_string(*r.adeg_outer) : "") + ",";
        out += join(inner, ";") + ",";
        out += (r.adeg_composed ? std::to_string(*r.adeg_composed) : "") + ",";
        out += (r.skipped ? "" : fmt_num(r.ratio)) + ",";
        out += csv_field(r.skipped ? r.tag + " (" + r.note + ")" : r.tag) + "\n";
    }
    return out;
}

}  // namespace adlab
