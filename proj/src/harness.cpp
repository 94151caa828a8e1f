#include "purepair/harness.hpp"
#include "purepair/errors.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/patterns.hpp"
#include "purepair/rng.hpp"
#include "purepair/trees.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace purepair
{
    auto sample_strategy_name(SampleStrategy s) -> const char *
    {
        return s == SampleStrategy::reject ? "reject" : "excise";
    }

    auto parse_sample_strategy(std::string_view name) -> SampleStrategy
    {
        if (name == "reject")
            return SampleStrategy::reject;
        if (name == "excise")
            return SampleStrategy::excise;
        throw ParseError("unknown sampling strategy '" + std::string(name) + "'");
    }

    auto sample_forest_free(const Graph & forest, int n, double p, std::uint64_t seed, SampleStrategy strategy, int max_iterations) -> Graph
    {
        if (strategy == SampleStrategy::reject) {
            for (int i = 0; i < max_iterations; ++i) {
                auto g = gnp(n, p, derive_seed(seed, static_cast<std::uint64_t>(i)));
                if (! find_induced_forest(g, forest, std::max(default_pattern_budget, forest.size())))
                    return g;
            }
            throw BudgetExceeded("sample_forest_free: no F-free draw in " + std::to_string(max_iterations) + " attempts");
        }
        auto g = gnp(n, p, seed);
        Rng rng(derive_seed(seed, ~std::uint64_t{0}));
        for (int i = 0; i < max_iterations; ++i) {
            auto copy = find_induced_forest(g, forest, std::max(default_pattern_budget, forest.size()));
            if (! copy)
                return g;
            int victim = (*copy)[static_cast<std::size_t>(rng.below(copy->size()))];
            auto keep = VertexSet::full(g.size());
            keep.reset(victim);
            g = induced_subgraph(g, keep).graph;
        }
        throw BudgetExceeded("sample_forest_free: copies remain after " + std::to_string(max_iterations) + " deletions");
    }

    namespace
    {
        auto kind_name(ExperimentKind k) -> const char *
        {
            return k == ExperimentKind::epsilon_profile ? "epsilon_profile" : "multicolour";
        }

        auto fixed(double x) -> std::string
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", x);
            return buf;
        }

        auto fnv1a(std::string_view s) -> std::string
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (unsigned char ch : s) {
                h ^= ch;
                h *= 0x100000001b3ULL;
            }
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
            return buf;
        }

        auto fraction_of(const nlohmann::json & j) -> Fraction
        {
            if (j.is_string())
                return Fraction::parse(j.get<std::string>());
            if (j.is_number())
                return Fraction::parse(j.dump());
            throw ParseError("epsilon must be a string or number, got " + j.dump());
        }
    }

    auto parse_experiment_config(const nlohmann::json & j) -> ExperimentConfig
    {
        static const std::set<std::string> known{"kind", "pattern", "n", "n_min", "n_max", "n_step", "p", "degree", "epsilon", "samples",
            "seed", "strategy", "exact_bound", "colours", "max_iterations"};
        if (! j.is_object())
            throw ParseError("experiment config must be a JSON object");
        for (auto & [key, value] : j.items())
            if (! known.contains(key))
                throw ParseError("experiment config: unknown key '" + key + "'");
        if (! j.contains("seed"))
            throw ParseError("experiment config: seed is required");

        ExperimentConfig c;
        try {
            c.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("kind")) {
                auto k = j.at("kind").get<std::string>();
                if (k == "epsilon_profile")
                    c.kind = ExperimentKind::epsilon_profile;
                else if (k == "multicolour")
                    c.kind = ExperimentKind::multicolour;
                else
                    throw ParseError("experiment config: unknown kind '" + k + "'");
            }
            if (j.contains("pattern"))
                c.pattern = j.at("pattern").get<std::string>();
            if (j.contains("n")) {
                auto & n = j.at("n");
                c.n_values = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
            }
            else if (j.contains("n_min") || j.contains("n_max")) {
                int lo = j.value("n_min", 20), hi = j.value("n_max", lo), step = j.value("n_step", 1);
                if (step < 1 || hi < lo)
                    throw ParseError("experiment config: bad n range");
                c.n_values.clear();
                for (int n = lo; n <= hi; n += step)
                    c.n_values.push_back(n);
            }
            c.p = j.value("p", c.p);
            c.degree = j.value("degree", c.degree);
            if (j.contains("epsilon")) {
                auto & e = j.at("epsilon");
                c.epsilons.clear();
                if (e.is_array())
                    for (auto & x : e)
                        c.epsilons.push_back(fraction_of(x));
                else
                    c.epsilons.push_back(fraction_of(e));
            }
            c.samples = j.value("samples", c.samples);
            if (j.contains("strategy"))
                c.strategy = parse_sample_strategy(j.at("strategy").get<std::string>());
            c.exact_bound = j.value("exact_bound", c.exact_bound);
            c.colours = j.value("colours", c.colours);
            c.max_iterations = j.value("max_iterations", c.max_iterations);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("experiment config: ") + e.what());
        }

        if (c.samples < 1)
            throw ParseError("experiment config: samples must be at least 1");
        if (c.n_values.empty())
            throw ParseError("experiment config: no values of n");
        for (int n : c.n_values)
            if (n < 2)
                throw ParseError("experiment config: n must be at least 2");
        if (c.epsilons.empty())
            throw ParseError("experiment config: empty epsilon grid");
        for (auto & e : c.epsilons)
            if (e.num() <= 0 || Fraction(1, 2) < e)
                throw ParseError("experiment config: epsilon " + e.to_string() + " outside (0, 1/2]");
        if (c.p < 0 || c.p > 1 || c.degree < 0)
            throw ParseError("experiment config: p must lie in [0, 1] and degree be non-negative");
        if (c.colours < 1)
            throw ParseError("experiment config: colours must be at least 1");
        parse_pattern(c.pattern);
        return c;
    }

    auto to_json(const ExperimentConfig & c) -> nlohmann::json
    {
        std::vector<std::string> eps;
        for (auto & e : c.epsilons)
            eps.push_back(e.to_string());
        nlohmann::json j{{"kind", kind_name(c.kind)},
            {"pattern", c.pattern},
            {"n", c.n_values},
            {"p", c.p},
            {"degree", c.degree},
            {"epsilon", eps},
            {"samples", c.samples},
            {"seed", c.seed},
            {"strategy", sample_strategy_name(c.strategy)},
            {"exact_bound", c.exact_bound},
            {"max_iterations", c.max_iterations}};
        if (c.kind == ExperimentKind::multicolour)
            j["colours"] = c.colours;
        return j;
    }

    auto config_fingerprint(const ExperimentConfig & c) -> std::string
    {
        return fnv1a(to_json(c).dump());
    }

    auto CsvTable::to_string() const -> std::string
    {
        auto line = [](const std::vector<std::string> & cells) {
            std::string out;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i)
                    out += ',';
                auto & s = cells[i];
                if (s.find_first_of(",\"\n") != std::string::npos) {
                    out += '"';
                    for (char ch : s)
                        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                    out += '"';
                }
                else
                    out += s;
            }
            return out + "\n";
        };
        std::string out = line(header);
        for (auto & r : rows)
            out += line(r);
        return out;
    }

    namespace
    {
        struct ProfileSample
        {
            int n = 0, index = 0;
            std::uint64_t seed = 0;
            Graph g;
            DegreeWitness degree{0, -1};
            std::optional<int> a_exact, a_heuristic;
            std::vector<Certificate> certs;
        };

        auto heuristic_value(const Graph & g) -> int
        {
            int best = 0;
            for (int k = 1; 2 * k <= g.size(); ++k) {
                if (find_anticomplete_pair(g, k, {PairMode::heuristic, Execution::serial, 0, 0}).status != PairStatus::found)
                    break;
                best = k;
            }
            return best;
        }
    }

    auto epsilon_profile(const ExperimentConfig & c, Execution exec) -> ExperimentOutput
    {
        auto forest = parse_pattern(c.pattern);
        if (! is_forest(forest))
            throw std::invalid_argument("epsilon_profile: pattern is not a forest");
        auto fp = config_fingerprint(c);
        auto per = static_cast<std::size_t>(c.samples);
        long total = static_cast<long>(c.n_values.size() * per);
        std::vector<ProfileSample> samples(static_cast<std::size_t>(total));
        std::vector<std::string> errors(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
        for (long t = 0; t < total; ++t) {
            auto ut = static_cast<std::size_t>(t);
            auto & s = samples[ut];
            s.n = c.n_values[ut / per];
            s.index = static_cast<int>(ut % per);
            s.seed = derive_seed(c.seed, ut);
            try {
                s.g = sample_forest_free(forest, s.n, c.edge_probability(s.n), s.seed, c.strategy, c.max_iterations);
                if (s.g.size() > 0)
                    s.degree = max_degree(s.g);
                if (s.g.size() <= c.exact_bound)
                    s.a_exact = max_anticomplete_value(s.g, c.exact_bound, false, Execution::serial).value;
                else
                    s.a_heuristic = heuristic_value(s.g);
                if (s.g.size() >= 2)
                    for (auto & eps : c.epsilons) {
                        auto cert = certify_trichotomy(s.g, forest, eps, {default_pattern_budget, c.exact_bound, Execution::serial, s.seed});
                        if (cert.kind != CertificateKind::not_found) {
                            auto problem = verify_certificate(s.g, forest, eps, cert);
                            if (! problem.empty())
                                throw std::logic_error("certificate failed verification: " + problem);
                        }
                        s.certs.push_back(std::move(cert));
                    }
            }
            catch (const std::exception & e) {
                errors[ut] = e.what();
            }
        }
        for (std::size_t t = 0; t < errors.size(); ++t)
            if (! errors[t].empty())
                throw std::runtime_error("epsilon_profile: sample " + std::to_string(t) + ": " + errors[t]);

        ExperimentOutput out;
        out.samples.header = profile_columns;
        out.aggregates.header = profile_aggregate_columns;
        std::map<int, std::optional<Fraction>> envelope;
        auto opt_int = [](const std::optional<int> & x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
        for (auto & s : samples) {
            int v = s.g.size();
            nlohmann::json certs = nlohmann::json::array();
            for (std::size_t e = 0; e < s.certs.size(); ++e) {
                auto & cert = s.certs[e];
                certs.push_back({{"epsilon", c.epsilons[e].to_string()},
                    {"kind", certificate_kind_name(cert.kind)},
                    {"threshold", cert.threshold},
                    {"pair_mode", pair_mode_name(cert.pair_mode)}});
                out.samples.rows.push_back({std::to_string(s.n), std::to_string(s.index), std::to_string(s.seed), std::to_string(v),
                    std::to_string(s.g.edge_count()), std::to_string(s.degree.degree), s.a_exact ? std::to_string(*s.a_exact) : "",
                    s.a_heuristic ? std::to_string(*s.a_heuristic) : "", c.epsilons[e].to_string(), certificate_kind_name(cert.kind)});
            }
            out.records.push_back({{"kind", "sample"},
                {"config", fp},
                {"n", s.n},
                {"sample", s.index},
                {"seed", s.seed},
                {"strategy", sample_strategy_name(c.strategy)},
                {"vertices", v},
                {"edges", s.g.edge_count()},
                {"max_degree", s.degree.degree},
                {"a_exact", opt_int(s.a_exact)},
                {"a_heuristic", opt_int(s.a_heuristic)},
                {"certificates", certs},
                {"graph6", to_graph6(s.g)}});
            if (v == 0)
                continue;
            int a = s.a_exact ? *s.a_exact : *s.a_heuristic;
            auto stat = Fraction(std::max(s.degree.degree, a), v);
            auto & env = envelope[s.n];
            if (! env || stat < *env)
                env = stat;
        }
        std::set<int> done;
        for (int n : c.n_values) {
            if (! done.insert(n).second || ! envelope[n])
                continue;
            auto & env = *envelope[n];
            out.records.push_back({{"kind", "aggregate"},
                {"config", fp},
                {"n", n},
                {"samples", c.samples},
                {"min_max_ratio", env.to_string()},
                {"min_max_ratio_value", fixed(env.to_double())}});
            out.aggregates.rows.push_back({std::to_string(n), std::to_string(c.samples), env.to_string(), fixed(env.to_double())});
            out.plot.emplace_back(n, env.to_double());
        }
        out.plot_title = "epsilon profile, " + c.pattern + "-free samples";
        out.x_label = "n";
        out.y_label = "min over samples of max(Delta/n, a/n)";
        return out;
    }

    namespace
    {
        struct ColourSample
        {
            int n = 0, index = 0;
            std::uint64_t seed = 0;
            // per epsilon: satisfying class (-1 for none) and the reason
            std::vector<std::pair<int, std::string>> result;
        };
    }

    auto multicolour_experiment(const ExperimentConfig & c, Execution exec) -> ExperimentOutput
    {
        auto h = parse_pattern(c.pattern);
        auto fp = config_fingerprint(c);
        auto per = static_cast<std::size_t>(c.samples);
        long total = static_cast<long>(c.n_values.size() * per);
        std::vector<ColourSample> samples(static_cast<std::size_t>(total));
        std::vector<std::string> errors(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
        for (long t = 0; t < total; ++t) {
            auto ut = static_cast<std::size_t>(t);
            auto & s = samples[ut];
            s.n = c.n_values[ut / per];
            s.index = static_cast<int>(ut % per);
            s.seed = derive_seed(c.seed, ut);
            try {
                std::vector<Graph> classes(static_cast<std::size_t>(c.colours), Graph(s.n));
                Rng rng(s.seed);
                for (int u = 0; u < s.n; ++u)
                    for (int v = u + 1; v < s.n; ++v)
                        classes[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(c.colours)))].add_edge(u, v);
                std::vector<char> has_copy;
                for (auto & g : classes) {
                    auto copy = find_induced_forest(g, h, std::max(default_pattern_budget, h.size()));
                    if (copy && ! verify_induced(g, h, *copy).empty())
                        throw std::logic_error("induced copy failed verification");
                    has_copy.push_back(copy.has_value());
                }
                auto mode = s.n <= c.exact_bound ? PairMode::exact : PairMode::heuristic;
                for (auto & eps : c.epsilons) {
                    int k = epsilon_threshold(eps, s.n);
                    std::pair<int, std::string> res{-1, mode == PairMode::exact ? "none" : "unknown"};
                    for (int i = 0; i < c.colours && res.first == -1; ++i) {
                        auto & g = classes[static_cast<std::size_t>(i)];
                        if (has_copy[static_cast<std::size_t>(i)])
                            res = {i, "copy"};
                        else {
                            auto p = find_anticomplete_pair(g, k, {mode, Execution::serial, 0, s.seed});
                            if (p.status == PairStatus::found) {
                                if (! are_anticomplete(g, p.a, p.b) || p.a.count() < k || p.b.count() < k || p.a.intersects(p.b))
                                    throw std::logic_error("anticomplete pair failed verification");
                                res = {i, "pair"};
                            }
                        }
                    }
                    s.result.push_back(std::move(res));
                }
            }
            catch (const std::exception & e) {
                errors[ut] = e.what();
            }
        }
        for (std::size_t t = 0; t < errors.size(); ++t)
            if (! errors[t].empty())
                throw std::runtime_error("multicolour_experiment: sample " + std::to_string(t) + ": " + errors[t]);

        ExperimentOutput out;
        out.samples.header = multicolour_columns;
        out.aggregates.header = multicolour_aggregate_columns;
        std::map<std::pair<int, std::size_t>, int> hits;
        for (auto & s : samples) {
            nlohmann::json per_eps = nlohmann::json::array();
            for (std::size_t e = 0; e < s.result.size(); ++e) {
                auto & [cls, why] = s.result[e];
                per_eps.push_back({{"epsilon", c.epsilons[e].to_string()}, {"satisfied", cls >= 0}, {"class", cls}, {"reason", why}});
                out.samples.rows.push_back({std::to_string(s.n), std::to_string(s.index), std::to_string(s.seed), std::to_string(c.colours),
                    c.epsilons[e].to_string(), cls >= 0 ? "1" : "0", std::to_string(cls), why});
                hits[{s.n, e}] += cls >= 0;
            }
            out.records.push_back({{"kind", "sample"},
                {"config", fp},
                {"n", s.n},
                {"sample", s.index},
                {"seed", s.seed},
                {"colours", c.colours},
                {"results", per_eps}});
        }
        std::set<int> done;
        for (int n : c.n_values) {
            if (! done.insert(n).second)
                continue;
            for (std::size_t e = 0; e < c.epsilons.size(); ++e) {
                int trials = c.samples * static_cast<int>(std::count(c.n_values.begin(), c.n_values.end(), n));
                int sat = hits[{n, e}];
                auto rate = Fraction(sat, trials);
                out.records.push_back({{"kind", "aggregate"},
                    {"config", fp},
                    {"n", n},
                    {"epsilon", c.epsilons[e].to_string()},
                    {"trials", trials},
                    {"satisfied", sat},
                    {"rate", rate.to_string()},
                    {"rate_value", fixed(rate.to_double())}});
                out.aggregates.rows.push_back({std::to_string(n), c.epsilons[e].to_string(), std::to_string(trials), std::to_string(sat),
                    fixed(rate.to_double())});
                if (e == 0)
                    out.plot.emplace_back(n, rate.to_double());
            }
        }
        out.plot_title = "multicolour satisfaction, k = " + std::to_string(c.colours) + ", H = " + c.pattern;
        out.x_label = "n";
        out.y_label = "satisfied fraction at epsilon = " + c.epsilons.front().to_string();
        return out;
    }

    auto run_experiment(const ExperimentConfig & c, Execution exec) -> ExperimentOutput
    {
        return c.kind == ExperimentKind::epsilon_profile ? epsilon_profile(c, exec) : multicolour_experiment(c, exec);
    }

    auto reaggregate(const ExperimentConfig & c, const std::vector<nlohmann::json> & records) -> std::vector<nlohmann::json>
    {
        auto fp = config_fingerprint(c);
        std::vector<nlohmann::json> out;
        if (c.kind == ExperimentKind::epsilon_profile) {
            std::map<int, std::pair<int, std::optional<Fraction>>> by_n;
            for (auto & r : records) {
                if (r.at("kind") != "sample")
                    continue;
                int v = r.at("vertices").get<int>();
                auto & slot = by_n[r.at("n").get<int>()];
                ++slot.first;
                if (v == 0)
                    continue;
                int a = r.at("a_exact").is_null() ? r.at("a_heuristic").get<int>() : r.at("a_exact").get<int>();
                auto stat = Fraction(std::max(r.at("max_degree").get<int>(), a), v);
                if (! slot.second || stat < *slot.second)
                    slot.second = stat;
            }
            std::set<int> done;
            for (int n : c.n_values) {
                if (! done.insert(n).second || ! by_n[n].second)
                    continue;
                auto & env = *by_n[n].second;
                out.push_back({{"kind", "aggregate"},
                    {"config", fp},
                    {"n", n},
                    {"samples", c.samples},
                    {"min_max_ratio", env.to_string()},
                    {"min_max_ratio_value", fixed(env.to_double())}});
            }
            return out;
        }
        std::map<std::pair<int, std::string>, std::pair<int, int>> tally;
        for (auto & r : records) {
            if (r.at("kind") != "sample")
                continue;
            for (auto & e : r.at("results")) {
                auto & slot = tally[{r.at("n").get<int>(), e.at("epsilon").get<std::string>()}];
                ++slot.first;
                slot.second += e.at("satisfied").get<bool>();
            }
        }
        std::set<int> done;
        for (int n : c.n_values) {
            if (! done.insert(n).second)
                continue;
            for (auto & eps : c.epsilons) {
                auto [trials, sat] = tally[{n, eps.to_string()}];
                auto rate = Fraction(sat, std::max(trials, 1));
                out.push_back({{"kind", "aggregate"},
                    {"config", fp},
                    {"n", n},
                    {"epsilon", eps.to_string()},
                    {"trials", trials},
                    {"satisfied", sat},
                    {"rate", rate.to_string()},
                    {"rate_value", fixed(rate.to_double())}});
            }
        }
        return out;
    }

    namespace
    {
        auto xml_escape(const std::string & s) -> std::string
        {
            std::string out;
            for (char ch : s) {
                switch (ch) {
                case '&':
                    out += "&amp;";
                    break;
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '"':
                    out += "&quot;";
                    break;
                default:
                    out += ch;
                }
            }
            return out;
        }

        auto num(double x) -> std::string
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", x);
            return buf;
        }

        auto tick(double x) -> std::string
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4g", x);
            return buf;
        }
    }

    auto render_svg(const std::vector<std::pair<double, double>> & points, PlotKind kind, const std::string & title,
        const std::string & x_label, const std::string & y_label) -> std::string
    {
        if (points.empty())
            throw std::invalid_argument("render_svg: no points");
        const double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 60;
        auto [xmin_it, xmax_it] = std::minmax_element(points.begin(), points.end());
        double x0 = xmin_it->first, x1 = xmax_it->first;
        double y0 = points.front().second, y1 = y0;
        for (auto & [x, y] : points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        if (x1 - x0 < 1e-12) {
            x0 -= 1;
            x1 += 1;
        }
        if (y1 - y0 < 1e-12) {
            y0 = y0 > 0 ? 0 : y0 - 1;
            y1 = y1 + (y1 > 0 ? y1 * 0.1 : 1);
        }
        auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
        auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

        std::ostringstream s;
        s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
          << num(width) << " " << num(height) << "\">\n";
        s << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";
        s << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
          << xml_escape(title) << "</text>\n";
        s << "<line x1=\"" << num(left) << "\" y1=\"" << num(height - bottom) << "\" x2=\"" << num(width - right) << "\" y2=\""
          << num(height - bottom) << "\" stroke=\"black\"/>\n";
        s << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\"" << num(height - bottom)
          << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
            s << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(height - bottom + 18)
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(xv) << "</text>\n";
            s << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(yv) + 4)
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(yv) << "</text>\n";
        }
        s << "<text x=\"" << num(width / 2) << "\" y=\"" << num(height - 16) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
          << xml_escape(x_label) << "</text>\n";
        s << "<text x=\"16\" y=\"" << num(height / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
          << num(height / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
        if (kind == PlotKind::line && points.size() > 1) {
            auto sorted = points;
            std::stable_sort(sorted.begin(), sorted.end(), [](auto & a, auto & b) { return a.first < b.first; });
            s << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < sorted.size(); ++i)
                s << (i ? " " : "") << num(px(sorted[i].first)) << "," << num(py(sorted[i].second));
            s << "\"/>\n";
        }
        for (auto & [x, y] : points)
            s << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"#1f5fa8\"/>\n";
        s << "</svg>\n";
        return s.str();
    }

    auto write_experiment(const std::string & prefix, const ExperimentConfig & c, const ExperimentOutput & out, const nlohmann::json & meta)
        -> std::vector<std::string>
    {
        std::vector<std::string> written;
        auto put = [&](const std::string & path, const std::string & text) {
            std::ofstream f(path, std::ios::binary);
            if (! f)
                throw std::runtime_error("cannot write " + path);
            f << text;
            written.push_back(path);
        };
        std::string lines;
        for (auto & r : out.records)
            lines += r.dump() + "\n";
        put(prefix + ".jsonl", lines);
        put(prefix + ".csv", out.samples.to_string());
        put(prefix + ".aggregate.csv", out.aggregates.to_string());
        if (! out.plot.empty())
            put(prefix + ".svg", render_svg(out.plot, out.plot.size() > 1 ? PlotKind::line : PlotKind::scatter, out.plot_title, out.x_label, out.y_label));
        auto m = meta;
        m["config"] = to_json(c);
        m["config_fingerprint"] = config_fingerprint(c);
        m["rng_version"] = rng_version;
        put(prefix + ".meta.json", m.dump(2) + "\n");
        return written;
    }
}

namespace purepair
{
    auto blockade_to_json(const Blockade & b) -> nlohmann::json
    {
        nlohmann::json blocks = nlohmann::json::array();
        for (int p = 0; p < b.length(); ++p)
            blocks.push_back(b.block(p).members());
        return {{"graph", to_graph6(b.host())}, {"blocks", blocks}, {"indices", b.indices()}};
    }

    auto blockade_from_json(const nlohmann::json & j) -> Blockade
    {
        try {
            auto g = std::make_shared<const Graph>(from_graph6(j.at("graph").get<std::string>()));
            auto lists = j.at("blocks").get<std::vector<std::vector<int>>>();
            std::vector<int> indices;
            if (j.contains("indices"))
                indices = j.at("indices").get<std::vector<int>>();
            else
                for (std::size_t i = 0; i < lists.size(); ++i)
                    indices.push_back(static_cast<int>(i) + 1);
            if (indices.size() != lists.size())
                throw ParseError("blockade: indices and blocks differ in length");
            std::vector<Block> blocks;
            for (std::size_t i = 0; i < lists.size(); ++i) {
                for (int v : lists[i])
                    if (v < 0 || v >= g->size())
                        throw ParseError("blockade: vertex " + std::to_string(v) + " out of range");
                blocks.push_back({indices[i], VertexSet::from(g->size(), lists[i])});
            }
            return Blockade(g, std::move(blocks));
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("blockade: ") + e.what());
        }
    }

    auto certificate_to_json(const Certificate & c) -> nlohmann::json
    {
        nlohmann::json j{{"kind", certificate_kind_name(c.kind)}, {"threshold", c.threshold}, {"log", c.log}};
        switch (c.kind) {
        case CertificateKind::induced_copy:
            j["embedding"] = c.embedding;
            break;
        case CertificateKind::high_degree:
            j["vertex"] = c.vertex;
            j["degree"] = c.degree;
            break;
        case CertificateKind::anticomplete_pair:
            j["a"] = c.a.members();
            j["b"] = c.b.members();
            j["pair_mode"] = pair_mode_name(c.pair_mode);
            break;
        case CertificateKind::not_found:
            j["pair_mode"] = pair_mode_name(c.pair_mode);
            break;
        }
        return j;
    }
}
