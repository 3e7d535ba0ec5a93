#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "thermo/io.hpp"

namespace thermo::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what)
{
    throw ConfigError("field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path)
{
    if (!j.is_object())
        field_error(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    require_object(j, path);
    for (const auto& [key, value] : j.items()) {
        bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known)
            field_error(join(path, key), "unknown key");
    }
}

double as_double(const json& j, const std::string& path)
{
    if (!j.is_number())
        field_error(path, "expected a number");
    return j.get<double>();
}

double as_positive(const json& j, const std::string& path)
{
    double v = as_double(j, path);
    if (!(v > 0.0))
        field_error(path, "must be positive");
    return v;
}

int as_int(const json& j, const std::string& path, int lo = 0)
{
    if (!j.is_number_integer())
        field_error(path, "expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < lo || v > 1'000'000)
        field_error(path, "must be an integer >= " + std::to_string(lo));
    return static_cast<int>(v);
}

std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string())
        field_error(path, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto as_list(const json& j, const std::string& path, F&& item)
{
    if (!j.is_array() || j.empty())
        field_error(path, "expected a non-empty array");
    std::vector<decltype(item(j, path))> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(item(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

ZooParams parse_zoo_params(const json& j, const std::string& path)
{
    check_keys(j, path, {"translation_m", "fiber_m", "doubling_margin", "doubling_max_digits"});
    ZooParams p;
    if (j.contains("translation_m"))
        p.translation_m = as_int(j["translation_m"], join(path, "translation_m"), 1);
    if (j.contains("fiber_m"))
        p.fiber_m = as_int(j["fiber_m"], join(path, "fiber_m"), 1);
    if (j.contains("doubling_margin"))
        p.doubling_margin = as_int(j["doubling_margin"], join(path, "doubling_margin"), 0);
    if (j.contains("doubling_max_digits"))
        p.doubling_max_digits = as_int(j["doubling_max_digits"], join(path, "doubling_max_digits"), 2);
    return p;
}

ZooEntry parse_system(const json& j, const std::string& path, const ZooParams& params,
                      const std::filesystem::path& base_dir)
{
    if (j.is_string()) {
        auto name = j.get<std::string>();
        auto names = zoo_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            field_error(path, "unknown zoo entry '" + name + "'");
        return zoo_entry(name, params);
    }
    check_keys(j, path, {"name", "symbolic", "sampled", "extension", "invariant_probability"});
    std::string name = j.contains("name") ? as_string(j["name"], join(path, "name")) : "custom";
    if (j.contains("symbolic") == j.contains("sampled"))
        field_error(path, "needs exactly one of 'symbolic' and 'sampled'");

    if (j.contains("symbolic")) {
        auto sp = join(path, "symbolic");
        const auto& s = j["symbolic"];
        check_keys(s, sp, {"k", "transitions"});
        if (!s.contains("k") || !s.contains("transitions"))
            field_error(sp, "needs 'k' and 'transitions'");
        int k = as_int(s["k"], join(sp, "k"), 1);
        auto rows = as_list(s["transitions"], join(sp, "transitions"), [](const json& row, const std::string& rp) {
            return as_list(row, rp, [](const json& v, const std::string& vp) { return as_int(v, vp); });
        });
        if (j.contains("extension") || j.contains("invariant_probability"))
            field_error(path, "symbolic systems are compact and carry invariant probabilities");
        try {
            return custom_sft_entry(name, k, rows);
        } catch (const DomainError& e) {
            field_error(sp, e.what());
        }
    }

    auto sp = join(path, "sampled");
    const auto& s = j["sampled"];
    check_keys(s, sp, {"csv"});
    if (!s.contains("csv"))
        field_error(sp, "needs 'csv'");
    auto file = base_dir / as_string(s["csv"], join(sp, "csv"));
    std::ifstream in(file);
    if (!in)
        field_error(join(sp, "csv"), "cannot open " + file.string());
    std::optional<System> sys;
    try {
        sys = read_sampled_csv(in, name);
    } catch (const DomainError& e) {
        field_error(join(sp, "csv"), e.what());
    }
    std::optional<ExtensionRecipe> recipe;
    if (j.contains("extension")) {
        auto ep = join(path, "extension");
        check_keys(j["extension"], ep, {"fiber_map"});
        if (!j["extension"].contains("fiber_map"))
            field_error(ep, "needs 'fiber_map'");
        auto ids = as_list(j["extension"]["fiber_map"], join(ep, "fiber_map"),
                           [](const json& v, const std::string& vp) { return as_int(v, vp); });
        recipe = ExtensionRecipe{{ids.begin(), ids.end()}};
    }
    auto entry = custom_sampled_entry(std::move(*sys), std::move(recipe));
    if (j.contains("invariant_probability")) {
        if (!j["invariant_probability"].is_boolean())
            field_error(join(path, "invariant_probability"), "expected true or false");
        entry.invariant_probability = j["invariant_probability"].get<bool>();
    }
    return entry;
}

std::pair<Potential, std::string> parse_potential(const json& j, const std::string& path, const ZooEntry& entry)
{
    if (j.is_number()) {
        double c = j.get<double>();
        return {Potential::constant(c), "constant"};
    }
    check_keys(j, path, {"constant", "indicators", "table", "bump"});
    double c = j.contains("constant") ? as_double(j["constant"], join(path, "constant")) : 0.0;
    int shapes = static_cast<int>(j.contains("indicators")) + static_cast<int>(j.contains("table")) +
                 static_cast<int>(j.contains("bump"));
    if (shapes > 1)
        field_error(path, "at most one of 'indicators', 'table' and 'bump'");

    if (j.contains("indicators")) {
        auto ip = join(path, "indicators");
        if (!entry.sft)
            field_error(ip, "needs a symbolic or coded system");
        int k = entry.sft->first;
        struct Term {
            Word word;
            double weight;
        };
        auto terms = as_list(j["indicators"], ip, [k](const json& t, const std::string& tp) {
            check_keys(t, tp, {"word", "weight"});
            if (!t.contains("word"))
                field_error(tp, "needs 'word'");
            auto symbols = as_list(t["word"], join(tp, "word"), [k](const json& v, const std::string& vp) {
                int s = as_int(v, vp);
                if (s >= k)
                    field_error(vp, "symbol out of range");
                return static_cast<std::uint8_t>(s);
            });
            double w = t.contains("weight") ? as_double(t["weight"], join(tp, "weight")) : 1.0;
            return Term{{symbols.begin(), symbols.end()}, w};
        });
        std::size_t depth = 0;
        for (const auto& t : terms)
            depth = std::max(depth, t.word.size());
        if (depth > 12)
            field_error(ip, "words longer than 12 symbols");
        std::size_t cells = 1;
        for (std::size_t i = 0; i < depth; ++i)
            cells *= static_cast<std::size_t>(k);
        std::vector<double> values(cells, 0.0);
        for (std::size_t code = 0; code < cells; ++code) {
            Word w(depth);
            auto rest = code;
            for (std::size_t i = depth; i-- > 0;) {
                w[i] = static_cast<std::uint8_t>(rest % static_cast<std::size_t>(k));
                rest /= static_cast<std::size_t>(k);
            }
            for (const auto& t : terms)
                if (std::equal(t.word.begin(), t.word.end(), w.begin()))
                    values[code] += t.weight;
        }
        return {Potential::cylinder(k, static_cast<int>(depth), std::move(values), c), "indicators"};
    }
    if (j.contains("table")) {
        auto values = as_list(j["table"], join(path, "table"),
                              [](const json& v, const std::string& vp) { return as_double(v, vp); });
        return {Potential::table(std::move(values), c), "table"};
    }
    if (j.contains("bump")) {
        auto bp = join(path, "bump");
        check_keys(j["bump"], bp, {"height", "width"});
        double h = j["bump"].contains("height") ? as_double(j["bump"]["height"], join(bp, "height")) : 1.0;
        double w = j["bump"].contains("width") ? as_positive(j["bump"]["width"], join(bp, "width")) : 4.0;
        return {bump_potential(h, w, c), "bump"};
    }
    return {Potential::constant(c), "constant"};
}

std::vector<int> parse_q_grid(const json& j, const std::string& path)
{
    return as_list(j, path, [](const json& v, const std::string& vp) {
        if (v.is_number_integer() && v.get<std::int64_t>() <= 1)
            field_error(vp, "the chunked bound needs 1 < q < n");
        return as_int(v, vp, 2);
    });
}

void parse_properties(const json& j, const std::string& path, PropertyOptions& o)
{
    check_keys(j, path, {"n_max", "eps", "q", "k_max", "submult_max", "shift"});
    if (j.contains("n_max"))
        o.n_max = as_int(j["n_max"], join(path, "n_max"), 2);
    if (j.contains("eps"))
        o.eps = as_positive(j["eps"], join(path, "eps"));
    if (j.contains("q"))
        o.q_grid = parse_q_grid(j["q"], join(path, "q"));
    if (j.contains("k_max"))
        o.k_max = as_int(j["k_max"], join(path, "k_max"), 1);
    if (j.contains("submult_max"))
        o.submult_max = as_int(j["submult_max"], join(path, "submult_max"), 2);
    if (j.contains("shift"))
        o.shift = as_double(j["shift"], join(path, "shift"));
    for (int q : o.q_grid)
        if (q >= o.n_max)
            field_error(join(path, "q"), "the chunked bound needs 1 < q < n_max");
}

} // namespace

SolverMode parse_mode(const std::string& s)
{
    if (s == "exact")
        return SolverMode::exact;
    if (s == "greedy")
        return SolverMode::greedy;
    throw ConfigError("mode must be 'exact' or 'greedy', got '" + s + "'");
}

const char* to_string(SolverMode m)
{
    return m == SolverMode::exact ? "exact" : "greedy";
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto colon = what.find(": ", what.find("parse error"));
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          (colon == std::string::npos ? what : what.substr(colon + 2)));
    }
    check_keys(j, "", {"system", "zoo", "potential", "eps", "n_max", "q", "pipeline_n", "pipeline_eps", "mode",
                       "seed", "out", "witness_gate", "properties"});

    RunConfig c;
    if (j.contains("zoo")) {
        c.zoo_params = parse_zoo_params(j["zoo"], "zoo");
        c.zoo_params_set = true;
    }
    if (j.contains("system"))
        c.entry = parse_system(j["system"], "system", c.zoo_params, base_dir);
    if (j.contains("potential")) {
        if (!c.entry)
            field_error("potential", "needs 'system'");
        auto [f, label] = parse_potential(j["potential"], "potential", *c.entry);
        c.potential = std::move(f);
        c.potential_label = label;
    }
    if (j.contains("eps"))
        c.eps = as_list(j["eps"], "eps", [](const json& v, const std::string& p) { return as_positive(v, p); });
    if (j.contains("n_max"))
        c.n_max = as_int(j["n_max"], "n_max", 2);
    if (j.contains("q"))
        c.q_grid = parse_q_grid(j["q"], "q");
    if (j.contains("pipeline_n"))
        c.pipeline_n = as_list(j["pipeline_n"], "pipeline_n",
                               [](const json& v, const std::string& p) { return as_int(v, p, 1); });
    if (j.contains("pipeline_eps"))
        c.pipeline_eps = as_positive(j["pipeline_eps"], "pipeline_eps");
    if (j.contains("mode")) {
        try {
            c.mode = parse_mode(as_string(j["mode"], "mode"));
        } catch (const ConfigError& e) {
            field_error("mode", e.what());
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            field_error("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("out"))
        c.out = base_dir / as_string(j["out"], "out");
    if (j.contains("witness_gate"))
        c.witness_gate = as_positive(j["witness_gate"], "witness_gate");
    if (j.contains("properties"))
        parse_properties(j["properties"], "properties", c.properties);
    c.properties.mode = c.mode;

    int top = *std::max_element(c.q_grid.begin(), c.q_grid.end());
    auto pn = effective_pipeline_n(c);
    if (c.entry && top >= *std::max_element(pn.begin(), pn.end()))
        field_error("q", "the chunked bound needs 1 < q < n for the largest pipeline level");
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str(), path.parent_path().empty() ? "." : path.parent_path());
}

int effective_n_max(const RunConfig& c)
{
    if (c.n_max > 0)
        return c.n_max;
    return c.entry ? c.entry->default_n_max : 10;
}

std::vector<double> effective_eps(const RunConfig& c)
{
    if (!c.eps.empty())
        return c.eps;
    return c.entry ? c.entry->default_eps : std::vector<double>{0.3};
}

std::vector<int> effective_pipeline_n(const RunConfig& c)
{
    if (!c.pipeline_n.empty())
        return c.pipeline_n;
    std::vector<int> out;
    for (int n = 2; n <= std::min(effective_n_max(c), 10); ++n)
        out.push_back(n);
    return out;
}

Potential effective_potential(const RunConfig& c)
{
    if (c.potential)
        return *c.potential;
    return Potential::constant(0.0);
}

} // namespace thermo::cli
