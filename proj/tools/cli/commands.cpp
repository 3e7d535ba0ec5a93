#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "thermo/io.hpp"
#include "thermo/misiurewicz.hpp"
#include "thermo/topo_pressure.hpp"

namespace thermo::cli {

namespace {

using json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j)
{
    write_file(path, j.dump(2) + "\n");
}

json header(const RunConfig& c, const ZooEntry& entry)
{
    json j;
    j["system"] = entry.name;
    j["potential"] = c.potential_label;
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    return j;
}

/// Oracle pressure when one is available.
std::optional<double> oracle_pressure(const ZooEntry& entry, const Potential& f)
{
    if (!entry.invariant_probability)
        return f.at_infinity();
    if (entry.sft && (f.cylinder_form() || f.core_is_zero()))
        return transfer_matrix_pressure(entry.sft->first, entry.sft->second, f);
    return std::nullopt;
}

struct Estimate {
    TopologicalReport report;
    double max_projection_error = 0.0;
};

Estimate run_estimate(const RunConfig& c, const ZooEntry& entry, const Potential& f)
{
    TopologicalOptions o;
    o.mode = c.mode;
    Estimate e;
    e.report = topological_pressure(entry.scaffold, f, effective_eps(c), effective_n_max(c), o);
    e.max_projection_error = entry.scaffold(effective_n_max(c), e.report.eps_grid.back()).max_projection_error();
    return e;
}

json estimate_summary(const RunConfig& c, const ZooEntry& entry, const Potential& f, const Estimate& e)
{
    const auto& r = e.report;
    json j = header(c, entry);
    j["n_max"] = effective_n_max(c);
    j["eps_grid"] = r.eps_grid;
    j["consolidated_pressure"] = r.consolidated.extrapolated;
    j["consolidated_eps"] = r.consolidated_eps;
    j["converged"] = r.converged;

    std::map<std::string, int> counts{{"exact", 0}, {"upper", 0}, {"lower", 0}};
    json flagged = json::array();
    for (const auto& est : r.all()) {
        for (std::size_t i = 0; i < est.bounds.size(); ++i) {
            ++counts[to_string(est.bounds[i])];
            if (est.bounds[i] != Bound::exact)
                flagged.push_back({{"kind", to_string(est.kind)},
                                   {"epsilon", est.epsilon ? json(*est.epsilon) : json(nullptr)},
                                   {"n", est.n_values[i]},
                                   {"bound_direction", to_string(est.bounds[i])}});
        }
    }
    j["bound_counts"] = counts;
    j["flagged_levels"] = flagged;
    j["max_projection_error"] = e.max_projection_error;
    auto oracle = oracle_pressure(entry, f);
    j["oracle"] = oracle ? json(*oracle) : json(nullptr);
    return j;
}

std::vector<Partition> witness_family(const System& sys)
{
    if (sys.has_coding())
        return cylinder_family(sys, std::min(sys.depth(), 3));
    return {natural_partition(sys)};
}

} // namespace

int cmd_zoo_list(std::ostream& out)
{
    for (const auto& name : zoo_names())
        out << name << '\n';
    return exit_ok;
}

int cmd_zoo_describe(const std::string& name, std::ostream& out)
{
    out << describe(zoo_entry(name));
    return exit_ok;
}

int cmd_estimate(const RunConfig& c, std::ostream& log)
{
    if (!c.entry)
        throw ConfigError("field 'system': required by estimate");
    const auto& entry = *c.entry;
    auto f = effective_potential(c);
    auto e = run_estimate(c, entry, f);

    std::ostringstream csv;
    write_pressure_csv(csv, e.report.all());
    write_file(c.out / "pressure.csv", csv.str());
    write_json(c.out / "summary.json", estimate_summary(c, entry, f, e));
    log << fmt::format("{}: consolidated pressure {:.6f} at eps {:.4g}{}\n", entry.name,
                       e.report.consolidated.extrapolated, e.report.consolidated_eps,
                       e.report.converged ? "" : " (not converged)");
    return exit_ok;
}

int cmd_verify_vp(const RunConfig& c, std::ostream& log)
{
    if (!c.entry)
        throw ConfigError("field 'system': required by verify-vp");
    const auto& entry = *c.entry;
    auto f = effective_potential(c);
    auto e = run_estimate(c, entry, f);
    double topo = e.report.consolidated.extrapolated;

    double eps = c.pipeline_eps.value_or(effective_eps(c).front());
    auto [mu_star, pipeline] =
        lower_bound_pipeline(extension_factory(entry), f, eps, effective_pipeline_n(c), c.q_grid, c.mode);

    json witnesses = json::array();
    std::optional<double> best;
    auto admit = [&](json w, double value, bool admissible) {
        w["value"] = value;
        w["admissible"] = admissible;
        if (admissible && (!best || value > *best))
            best = value;
        witnesses.push_back(std::move(w));
    };

    std::optional<MarkovMeasure> gibbs;
    if (entry.sft && entry.invariant_probability && (f.cylinder_form() || f.core_is_zero())) {
        gibbs = gibbs_markov_measure(entry.sft->first, entry.sft->second, f);
        std::vector<int> depths{1, 2, 3};
        double value = measure_pressure(*gibbs, f, depths);
        admit({{"name", "gibbs-markov"},
               {"oracle", transfer_matrix_pressure(entry.sft->first, entry.sft->second, f)}},
              value, true);
    }

    {
        auto sys = entry.scaffold(pipeline.n, eps);
        double defect = mu_star.total_mass() > 0.0 ? mu_star.scaled(1.0 / mu_star.total_mass()).invariance_defect(sys)
                                                   : 0.0;
        bool admissible = entry.invariant_probability && mu_star.total_mass() > 0.0 && defect <= c.witness_gate;
        admit({{"name", "misiurewicz"}, {"invariance_defect", defect}, {"gate", c.witness_gate}},
              pipeline.measure_pressure, admissible);
    }

    if (!entry.invariant_probability)
        admit({{"name", "zero-measure"}, {"note", "no invariant probability; value is f at infinity"}},
              f.at_infinity(), true);

    json j = header(c, entry);
    j["topological_pressure"] = topo;
    j["consolidated_eps"] = e.report.consolidated_eps;
    j["converged"] = e.report.converged;
    j["best_measure_pressure"] = best ? json(*best) : json(nullptr);
    j["gap"] = best ? json(topo - *best) : json(nullptr);
    j["witnesses"] = witnesses;
    j["pipeline"] = json::parse(pipeline_to_json(pipeline));
    write_json(c.out / "verify_vp.json", j);

    std::ostringstream mu_csv;
    write_measure_csv(mu_csv, mu_star);
    write_file(c.out / "mu_star.csv", mu_csv.str());
    if (gibbs)
        write_file(c.out / "gibbs.json", markov_to_json(*gibbs) + "\n");

    log << fmt::format("{}: topological {:.6f}, best measure {}, gap {}\n", entry.name, topo,
                       best ? fmt::format("{:.6f}", *best) : "none", best ? fmt::format("{:.6f}", topo - *best) : "n/a");
    return exit_ok;
}

int cmd_properties(const RunConfig& c, std::ostream& log)
{
    std::vector<ZooEntry> entries;
    if (c.entry) {
        entries.push_back(*c.entry);
    } else {
        auto params = c.zoo_params_set ? c.zoo_params : property_zoo_params();
        for (const auto& name : zoo_names())
            entries.push_back(zoo_entry(name, params));
    }

    std::ostringstream csv;
    csv << "lemma,system,mode,passed,slack\n";
    json rows = json::array();
    bool all_passed = true;
    for (const auto& entry : entries) {
        auto f = c.potential ? *c.potential : sample_potential(entry);
        for (const auto& r : property_suite(entry, f, c.properties)) {
            csv << r.name << ',' << entry.name << ',' << to_string(c.mode) << ',' << (r.passed ? "true" : "false")
                << ',' << format_double(r.slack) << '\n';
            json row{{"lemma", r.name}, {"system", entry.name}, {"mode", to_string(c.mode)},
                     {"passed", r.passed}, {"slack", r.slack}};
            if (!r.passed) {
                row["details"] = r.details;
                log << fmt::format("FAIL {} on {}\n", r.name, entry.name);
            }
            all_passed = all_passed && r.passed;
            rows.push_back(std::move(row));
        }
    }
    write_file(c.out / "properties.csv", csv.str());
    json j;
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    j["all_passed"] = all_passed;
    j["checks"] = rows;
    write_json(c.out / "properties.json", j);
    log << (all_passed ? "all properties passed\n" : "some properties failed\n");
    return all_passed ? exit_ok : exit_failed;
}

} // namespace thermo::cli
