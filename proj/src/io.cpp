// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace boxball
{
std::string format_double(double x)
{
    if (std::isinf(x))
    {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x))
    {
        return "nan";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& os, CsvComments const& comments, std::vector<std::string> const& columns,
               std::vector<std::vector<std::string>> const& rows)
{
    for (auto const& [key, value] : comments)
    {
        os << "# " << key << '=' << value << '\n';
    }
    auto line = [&](std::vector<std::string> const& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i)
        {
            if (i)
            {
                os << ',';
            }
            os << fields[i];
        }
        os << '\n';
    };
    line(columns);
    for (auto const& r : rows)
    {
        line(r);
    }
}

namespace
{
std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s)
    {
        if (c == sep)
        {
            out.push_back(cur);
            cur.clear();
        }
        else if (c != '\r')
        {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::size_t CsvTable::column(std::string const& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
    {
        if (columns[i] == name)
        {
            return i;
        }
    }
    throw ValidationError("missing CSV column '" + name + "'");
}

std::string CsvTable::comment(std::string const& key) const
{
    for (auto const& [k, v] : comments)
    {
        if (k == key)
        {
            return v;
        }
    }
    return {};
}

CsvTable read_csv(std::istream& is)
{
    CsvTable table;
    std::string line;
    bool header = false;
    while (std::getline(is, line))
    {
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.empty())
        {
            continue;
        }
        if (!header && line.rfind("#", 0) == 0)
        {
            auto body = line.substr(1);
            if (!body.empty() && body.front() == ' ')
            {
                body.erase(0, 1);
            }
            auto const eq = body.find('=');
            if (eq != std::string::npos)
            {
                table.comments.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            }
            continue;
        }
        auto fields = split(line, ',');
        if (!header)
        {
            table.columns = std::move(fields);
            header = true;
        }
        else
        {
            if (fields.size() != table.columns.size())
            {
                throw ValidationError("CSV row has " + std::to_string(fields.size()) + " fields, header has "
                                      + std::to_string(table.columns.size()));
            }
            table.rows.push_back(std::move(fields));
        }
    }
    if (!header)
    {
        throw ValidationError("CSV input has no header row");
    }
    return table;
}

std::vector<std::int64_t> parse_int_list(std::string const& text)
{
    std::vector<std::int64_t> out;
    for (auto const& field : split(text, ','))
    {
        std::int64_t v = 0;
        auto const* begin = field.data();
        auto const* end = field.data() + field.size();
        while (begin < end && *begin == ' ')
        {
            ++begin;
        }
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end)
        {
            throw ValidationError("not an integer list: '" + text + "'");
        }
        out.push_back(v);
    }
    return out;
}

//---------------------------------------------------------------------------//
nlohmann::json to_json(RationalVector const& v)
{
    auto j = nlohmann::json::array();
    for (auto const& q : v)
    {
        j.push_back(to_string(q));
    }
    return j;
}

nlohmann::json to_json(RationalMatrix const& m)
{
    auto j = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
        {
            row.push_back(to_string(m(r, c)));
        }
        j.push_back(std::move(row));
    }
    return j;
}

nlohmann::json to_json(BoundaryPartition const& partition)
{
    nlohmann::json j;
    j["d"] = partition.d();
    j["c"] = partition.model() == GapModel::sbbs ? partition.capacity().to_string() : "pushtasep";
    j["k"] = partition.k();
    j["clamp"] = partition.clamp();
    auto cells = nlohmann::json::array();
    for (auto const& cell : partition.cells())
    {
        cells.push_back({{"id", cell.id},
                         {"f", cell.degenerate},
                         {"representative", cell.representative.w},
                         {"principal", cell.id <= partition.d() - 1},
                         {"box", cell.is_box}});
    }
    j["cells"] = std::move(cells);
    return j;
}

nlohmann::json to_json(SCertificate const& cert)
{
    nlohmann::json j;
    j["holds"] = cert.holds;
    auto subs = nlohmann::json::array();
    for (auto const& s : cert.subsets)
    {
        nlohmann::json e{{"I", s.subset}, {"J", s.constraints}};
        if (s.farkas)
        {
            e["feasible"] = false;
            e["farkas"] = to_json(*s.farkas);
        }
        else
        {
            e["feasible"] = true;
            e["lambda"] = to_json(s.lambda);
        }
        subs.push_back(std::move(e));
    }
    j["subsets"] = std::move(subs);
    return j;
}

nlohmann::json to_json(ExperimentConfig const& c)
{
    nlohmann::json j;
    j["name"] = c.name;
    j["mode"] = c.mode;
    j["epsilon"] = c.epsilon;
    j["epsilons"] = c.epsilons;
    j["capacity"] = c.capacity.to_string();
    j["d"] = c.d;
    j["n"] = c.n;
    j["horizon"] = c.horizon;
    j["dt"] = c.dt;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["init_gaps"] = c.init_gaps ? nlohmann::json(*c.init_gaps) : nlohmann::json(nullptr);
    j["output"] = c.output;
    j["summary"] = c.summary;
    return j;
}

nlohmann::json to_json(EstimateReport const& r)
{
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(format_double(x)); };
    nlohmann::json j;
    j["label"] = r.label;
    j["estimate"] = num(r.estimate);
    j["standard_error"] = num(r.standard_error);
    j["trials"] = r.trials;
    j["predicted"] = r.predicted ? num(*r.predicted) : nlohmann::json(nullptr);
    j["rule"] = r.rule;
    j["lower"] = num(r.lower);
    j["upper"] = num(r.upper);
    j["pass"] = r.pass;
    j["gated"] = r.gated;
    return j;
}

nlohmann::json summary_json(ExperimentResult const& result)
{
    nlohmann::json j;
    j["config"] = to_json(result.config);
    auto est = nlohmann::json::array();
    auto pred = nlohmann::json::object();
    for (auto const& r : result.estimates)
    {
        est.push_back(to_json(r));
        if (r.predicted)
        {
            pred[r.label] = std::isfinite(*r.predicted) ? nlohmann::json(*r.predicted) : nlohmann::json(nullptr);
        }
    }
    j["estimates"] = std::move(est);
    j["predictions"] = std::move(pred);
    j["pass"] = result.pass();
    return j;
}

ExperimentConfig experiment_config_from_json(nlohmann::json const& j)
{
    static std::set<std::string> const known{"name", "mode", "epsilon", "epsilons", "capacity", "d", "n", "horizon", "dt",
                                             "trials", "seed", "init_gaps", "threads", "output", "summary"};
    if (!j.is_object())
    {
        throw ValidationError("experiment config must be a JSON object");
    }
    for (auto const& [key, value] : j.items())
    {
        if (!known.count(key))
        {
            throw ValidationError("unknown experiment config key '" + key + "'");
        }
    }
    auto text = [](nlohmann::json const& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    ExperimentConfig c;
    try
    {
        c.name = j.at("name").get<std::string>();
        if (j.contains("mode"))
            c.mode = j["mode"].get<std::string>();
        if (j.contains("epsilon"))
            c.epsilon = text(j["epsilon"]);
        if (j.contains("epsilons"))
        {
            for (auto const& e : j["epsilons"])
            {
                c.epsilons.push_back(text(e));
            }
        }
        if (j.contains("capacity"))
            c.capacity = Capacity::parse(text(j["capacity"]));
        if (j.contains("d"))
            c.d = j["d"].get<int>();
        if (j.contains("n"))
        {
            c.n.clear();
            if (j["n"].is_array())
            {
                for (auto const& v : j["n"])
                {
                    c.n.push_back(static_cast<long>(std::llround(v.get<double>())));
                }
            }
            else
            {
                c.n.push_back(static_cast<long>(std::llround(j["n"].get<double>())));
            }
        }
        if (j.contains("horizon"))
            c.horizon = j["horizon"].get<double>();
        if (j.contains("dt"))
            c.dt = j["dt"].get<double>();
        if (j.contains("trials"))
            c.trials = j["trials"].get<long>();
        if (j.contains("seed"))
            c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("init_gaps") && !j["init_gaps"].is_null())
            c.init_gaps = j["init_gaps"].get<std::vector<int>>();
        if (j.contains("threads"))
            c.threads = j["threads"].get<int>();
        if (j.contains("output"))
            c.output = j["output"].get<std::string>();
        if (j.contains("summary"))
            c.summary = j["summary"].get<std::string>();
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ValidationError(std::string("bad experiment config: ") + e.what());
    }
    c.validate();
    return c;
}

//---------------------------------------------------------------------------//
void write_experiment_csv(std::ostream& os, ExperimentResult const& result)
{
    auto const& c = result.config;
    CsvComments comments{{"experiment", c.name},
                         {"mode", c.mode},
                         {"eps", c.epsilon},
                         {"capacity", c.capacity.to_string()},
                         {"d", std::to_string(c.d)},
                         {"trials", std::to_string(c.trials)},
                         {"seed", std::to_string(c.seed)}};
    write_csv(os, comments, result.columns, result.rows);
}

void write_trajectory_csv(std::ostream& os, CsvComments const& comments, SbbsPath const& path)
{
    int const d = path.states.front().size();
    std::vector<std::string> columns{"t"};
    for (int i = 1; i <= d; ++i)
    {
        columns.push_back("pos_" + std::to_string(i));
    }
    for (int i = 1; i <= d; ++i)
    {
        columns.push_back("eta_" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < path.states.size(); ++t)
    {
        std::vector<std::string> r{std::to_string(t)};
        for (auto p : path.states[t].positions())
        {
            r.push_back(std::to_string(p));
        }
        for (int i = 0; i < d; ++i)
        {
            r.push_back(t < path.coins.size() ? std::to_string(path.coins[t].eta[static_cast<std::size_t>(i)]) : "");
        }
        rows.push_back(std::move(r));
    }
    write_csv(os, comments, columns, rows);
}

void write_trace_csv(std::ostream& os, CsvComments const& comments, SkorokhodTrace const& trace)
{
    int const m = trace.d - 1;
    std::vector<std::string> columns{"t"};
    for (auto const* prefix : {"W_", "X_"})
    {
        for (int i = 1; i <= m; ++i)
        {
            columns.push_back(prefix + std::to_string(i));
        }
    }
    for (int j = 1; j <= trace.k; ++j)
    {
        columns.push_back("Y_" + std::to_string(j));
    }
    for (int i = 1; i <= m; ++i)
    {
        columns.push_back("alpha_" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < trace.steps.size(); ++t)
    {
        auto const& s = trace.steps[t];
        std::vector<std::string> r{std::to_string(t)};
        for (int v : s.w)
            r.push_back(std::to_string(v));
        for (long v : s.x)
            r.push_back(std::to_string(v));
        for (long v : s.y)
            r.push_back(std::to_string(v));
        for (auto const& a : s.alpha)
            r.push_back(to_string(a));
        rows.push_back(std::move(r));
    }
    write_csv(os, comments, columns, rows);
}

void write_path_csv(std::ostream& os, CsvComments const& comments, PathSample const& path)
{
    std::size_t const m = path.w.empty() ? 0 : path.w.front().size();
    std::vector<std::string> columns{"t"};
    for (std::size_t i = 1; i <= m; ++i)
        columns.push_back("w_" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i)
        columns.push_back("y_" + std::to_string(i));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < path.times.size(); ++k)
    {
        std::vector<std::string> r{format_double(path.times[k])};
        for (double v : path.w[k])
            r.push_back(format_double(v));
        for (double v : path.y[k])
            r.push_back(format_double(v));
        rows.push_back(std::move(r));
    }
    write_csv(os, comments, columns, rows);
}

}  // namespace boxball
