#include "thermo/io.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace thermo {

using json = nlohmann::ordered_json;

std::string format_double(double v)
{
    return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v);
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

System read_sampled_csv(std::istream& in, const std::string& name)
{
    std::string line;
    if (!std::getline(in, line))
        throw DomainError("point table: empty file");
    auto header = split_csv(line);
    std::vector<std::size_t> coord_cols;
    std::optional<std::size_t> next_col, inf_col, proj_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto& h = header[i];
        if (h == "next")
            next_col = i;
        else if (h == "infinity_distance")
            inf_col = i;
        else if (h == "projection_error")
            proj_col = i;
        else if (!h.empty() && h[0] == 'x')
            coord_cols.push_back(i);
        else
            throw DomainError("point table: unknown column '" + h + "'");
    }
    if (!next_col || coord_cols.empty())
        throw DomainError("point table: needs a 'next' column and at least one x column");

    std::vector<std::vector<double>> coords;
    std::vector<PointId> next;
    std::vector<double> inf, proj;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw DomainError("point table line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " cells");
        try {
            std::vector<double> c;
            for (auto i : coord_cols)
                c.push_back(std::stod(cells[i]));
            coords.push_back(std::move(c));
            next.push_back(static_cast<PointId>(std::stoul(cells[*next_col])));
            if (inf_col)
                inf.push_back(std::stod(cells[*inf_col]));
            if (proj_col)
                proj.push_back(std::stod(cells[*proj_col]));
        } catch (const std::logic_error& e) {
            throw DomainError("point table line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (coords.empty())
        throw DomainError("point table: no points");
    for (auto n : next)
        if (n >= coords.size())
            throw DomainError("point table: next index " + std::to_string(n) + " out of range");
    auto euclid = [](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };
    std::optional<std::vector<double>> inf_opt;
    if (inf_col)
        inf_opt = std::move(inf);
    return System::sampled(std::move(coords), std::move(next), euclid, std::move(inf_opt), std::move(proj), name);
}

void write_pressure_csv(std::ostream& out, const std::vector<PressureEstimate>& estimates)
{
    out << "kind,epsilon,n,raw_value,log_over_n,bound_direction\n";
    for (const auto& e : estimates)
        for (std::size_t i = 0; i < e.n_values.size(); ++i)
            out << to_string(e.kind) << ',' << (e.epsilon ? format_double(*e.epsilon) : std::string()) << ','
                << e.n_values[i] << ',' << format_double(e.raw[i]) << ',' << format_double(e.values[i]) << ','
                << to_string(e.bounds[i]) << '\n';
}

void write_measure_csv(std::ostream& out, const FiniteMeasure& mu)
{
    out << "point_id,weight\n";
    for (PointId x = 0; x < mu.size(); ++x)
        if (mu.weight(x) != 0)
            out << x << ',' << format_double(mu.weight(x)) << '\n';
}

FiniteMeasure read_measure_csv(std::istream& in, std::size_t size)
{
    std::vector<double> w(size, 0.0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && line.rfind("point_id", 0) == 0))
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("measure csv line " + std::to_string(line_no) + ": expected point_id,weight");
        try {
            auto id = std::stoul(line.substr(0, comma));
            double v = std::stod(line.substr(comma + 1));
            if (id >= size)
                throw DomainError("measure csv line " + std::to_string(line_no) + ": point id out of range");
            w[id] += v;
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const DomainError*>(&e))
                throw;
            throw DomainError("measure csv line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return FiniteMeasure(std::move(w));
}

std::string markov_to_json(const MarkovMeasure& m)
{
    json j;
    j["P"] = m.p();
    j["pi"] = m.pi();
    if (m.block() > 1) {
        json states = json::array();
        for (const auto& s : m.states())
            states.push_back(std::vector<int>(s.begin(), s.end()));
        j["states"] = states;
        j["alphabet"] = m.alphabet();
    }
    return j.dump(2);
}

MarkovMeasure markov_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("markov json: ") + e.what());
    }
    if (!j.contains("P") || !j.contains("pi"))
        throw DomainError("markov json: fields P and pi are required");
    auto p = j.at("P").get<std::vector<std::vector<double>>>();
    auto pi = j.at("pi").get<std::vector<double>>();
    std::vector<Word> states;
    int alphabet = static_cast<int>(p.size());
    if (j.contains("states")) {
        for (const auto& s : j.at("states"))
            states.push_back(Word(s.get<std::vector<std::uint8_t>>()));
        alphabet = j.value("alphabet", alphabet);
    } else {
        for (std::size_t i = 0; i < p.size(); ++i)
            states.push_back(Word{static_cast<std::uint8_t>(i)});
    }
    return MarkovMeasure(alphabet, std::move(states), std::move(p), std::move(pi));
}

namespace {

json members_json(const std::vector<PointSet>& members)
{
    json arr = json::array();
    for (const auto& m : members) {
        json ids = json::array();
        for (auto x = m.find_first(); x != PointSet::npos; x = m.find_next(x))
            ids.push_back(x);
        arr.push_back(ids);
    }
    return arr;
}

std::vector<PointSet> members_from(const System& sys, const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("cover json: ") + e.what());
    }
    if (!j.contains("members") || !j.at("members").is_array())
        throw DomainError("cover json: field members must be an array");
    if (j.value("distinguished", 0) != 0)
        throw DomainError("cover json: the distinguished member must be member 0");
    std::vector<PointSet> out;
    for (const auto& ids : j.at("members")) {
        PointSet s(sys.size());
        for (const auto& id : ids) {
            auto x = id.get<std::size_t>();
            if (x >= sys.size())
                throw DomainError("cover json: point id " + std::to_string(x) + " out of range");
            s.set(x);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::string partition_to_json(const System& sys, const Partition& p)
{
    json j;
    j["members"] = members_json(p.members(sys));
    j["distinguished"] = 0;
    return j.dump();
}

Partition partition_from_json(const System& sys, const std::string& text)
{
    return Partition::from_members(sys, members_from(sys, text));
}

std::string cover_to_json(const Cover& c)
{
    json j;
    j["members"] = members_json(c.members());
    j["distinguished"] = 0;
    return j.dump();
}

Cover cover_from_json(const System& sys, const std::string& text)
{
    return Cover(sys, members_from(sys, text));
}

std::string pipeline_to_json(const PipelineReport& r)
{
    json j;
    j["epsilon"] = r.eps;
    j["n"] = r.n;
    j["A_n"] = r.a_n;
    j["entropy_identity_residual"] = r.entropy_identity_residual;
    j["defect"] = r.defect;
    j["chunk_slack"] = r.chunk_slack;
    j["measure_pressure"] = r.measure_pressure;
    j["separated_pressure"] = r.separated_pressure;
    j["gap"] = r.gap;
    j["tolerance"] = {{"defect", r.tol_defect}, {"chunking", r.tol_chunk}, {"truncation", r.tol_truncation},
                      {"total", r.tolerance}};
    j["n_argmax"] = r.n_argmax;
    j["bound_direction"] = to_string(r.bound);
    j["mass"] = {{"total", r.total_mass}, {"near_infinity", r.mass_near_infinity}};
    json rates = json::array();
    for (const auto& [n, v] : r.rates)
        rates.push_back({{"n", n}, {"log_A_over_n", v}});
    j["rates"] = rates;
    j["passed"] = r.passed;
    return j.dump(2);
}

} // namespace thermo
