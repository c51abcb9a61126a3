#include "regracut/cli.hpp"

#include "regracut/decomposition.hpp"
#include "regracut/density.hpp"
#include "regracut/edit.hpp"
#include "regracut/embedding.hpp"
#include "regracut/error.hpp"
#include "regracut/io.hpp"
#include "regracut/regularity.hpp"
#include "regracut/sampling.hpp"
#include "regracut/type_io.hpp"
#include "regracut/types.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace regracut {

namespace {

using nlohmann::json;

std::string number_text(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <typename T>
std::vector<T> parse_list(const std::string & text, const char * what)
{
    std::vector<T> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        T value{};
        const char * end = item.data() + item.size();
        const auto res = std::from_chars(item.data(), end, value);
        if (res.ec != std::errc{} || res.ptr != end)
            fail(ErrorKind::ParseError, std::string("bad ") + what + " entry '" + item + "'");
        out.push_back(value);
    }
    if (out.empty())
        fail(ErrorKind::ParseError, std::string("empty ") + what + " list");
    return out;
}

json witness_json(const std::optional<IrregularityWitness> & w)
{
    if (! w)
        return nullptr;
    return {{"a_prime", w->a_prime}, {"b_prime", w->b_prime}, {"color", w->color + 1}, {"deviation", w->deviation}};
}

json partition_json(const Equipartition & p)
{
    json out{{"blocks", p.blocks()}};
    if (p.has_parent())
        out["parents"] = *p.parents();
    return out;
}

Certifier make_certifier(const std::string & mode, int exact_cap)
{
    const auto m = certifier_from_name(mode);
    if (! m)
        fail(ErrorKind::ParseError, "unknown certifier mode '" + mode + "'");
    return Certifier{*m, exact_cap};
}

template <typename G>
std::vector<G> load_family(const std::vector<std::string> & paths)
{
    std::vector<G> family;
    for (const auto & path : paths) {
        AnyGraph g = load_graph(path);
        if (! std::holds_alternative<G>(g))
            fail(ErrorKind::KindMismatch, path + " is not the same kind of graph as the others");
        family.push_back(std::get<G>(std::move(g)));
    }
    return family;
}

bool is_digraph_file(const std::string & path)
{
    return std::holds_alternative<Digraph>(load_graph(path));
}

PaletteId palette_option(const std::string & name)
{
    const auto p = palette_from_name(name);
    if (! p)
        fail(ErrorKind::ParseError, "unknown palette '" + name + "'");
    return *p;
}

ArrowDistribution arrow_distribution(const std::vector<double> & p, std::optional<double> q)
{
    if (p.size() != 1 || ! q)
        fail(ErrorKind::BadDistribution, "digraphs take a single --p (bi probability) and --q (per-arrow probability)");
    return ArrowDistribution(p.front(), *q);
}

struct Context {
    std::ostream & out;
    std::string out_path;

    void emit(const std::string & text) const
    {
        if (out_path.empty())
            out << text;
        else
            write_file(out_path, text);
    }
    void emit(json report) const
    {
        report["schema"] = 1;
        emit(report.dump(2) + "\n");
    }
};

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Regularity partitions, embedding counts, types and edit distances for colored complete graphs"};
    app.name("regracut");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    Context ctx{out, {}};
    std::function<int()> action;
    auto add = [&](const char * name, const char * description) {
        auto * sub = app.add_subcommand(name, description);
        sub->add_option("--out", ctx.out_path, "Write the report to this file instead of stdout");
        return sub;
    };

    // Shared option storage; each subcommand binds what it needs.
    std::string graph_path, pattern_path, parts_path, type_path, a_text, b_text, p_text, n_text, kind = "rgraph";
    std::string mode = "automatic", efun_text, palette_name = "P0", witness_path;
    std::vector<std::string> forbid;
    double gamma = 0.0;
    std::optional<double> q, eps_opt, eta_opt;
    int m = 2, cap = default_order_cap, exact_cap = 8, k = 0, k_max = 2, n = 0, trials = 1000, seeds = 200, dist_cap = 0;
    long long type_cap = default_enumeration_cap;
    std::uint64_t seed = 0;

    auto with_graph = [&](CLI::App * sub, const char * flag = "--graph") {
        sub->add_option(flag, graph_path, "Graph file (rgraph or digraph text format)")->required()->check(CLI::ExistingFile);
    };

    // density
    {
        auto * sub = add("density", "Density vector between two vertex sets");
        with_graph(sub);
        sub->add_option("--a", a_text, "First set, comma separated")->required();
        sub->add_option("--b", b_text, "Second set, comma separated")->required();
        sub->callback([&] {
            action = [&] {
                return std::visit(
                    [&](const auto & g) {
                        const auto a = parse_list<Vertex>(a_text, "vertex"), b = parse_list<Vertex>(b_text, "vertex");
                        ctx.emit(json{{"densities", density_vector(g, std::span<const Vertex>(a), std::span<const Vertex>(b)).entries}});
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // check-pair
    {
        auto * sub = add("check-pair", "Certify or refute gamma-regularity of a pair");
        with_graph(sub);
        sub->add_option("--a", a_text, "First set, comma separated")->required();
        sub->add_option("--b", b_text, "Second set, comma separated")->required();
        sub->add_option("--gamma", gamma, "Regularity parameter in (0,1]")->required();
        sub->add_option("--mode", mode, "exact, heuristic or automatic")->capture_default_str();
        sub->add_option("--exact-cap", exact_cap, "Largest side size checked exactly in automatic mode")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                return std::visit(
                    [&](const auto & g) {
                        const auto a = parse_list<Vertex>(a_text, "vertex"), b = parse_list<Vertex>(b_text, "vertex");
                        const std::span<const Vertex> sa(a), sb(b);
                        const auto d = density_vector(g, sa, sb);
                        const auto report = make_certifier(mode, exact_cap).certify(g, sa, sb, gamma);
                        ctx.emit(json{{"densities", d.entries}, {"gamma", gamma}, {"verdict", std::string(to_string(report.verdict))},
                            {"witness", witness_json(report.witness)}});
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // index
    {
        auto * sub = add("index", "Index of an equipartition");
        with_graph(sub);
        auto * parts = sub->add_option("--parts", parts_path, "Partition JSON file")->check(CLI::ExistingFile);
        sub->add_option("--k", k, "Order of a seeded random equipartition")->excludes(parts);
        sub->add_option("--seed", seed, "Seed for --k")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                return std::visit(
                    [&](const auto & g) {
                        if (parts_path.empty() && k < 1)
                            fail(ErrorKind::BadOrder, "give --parts or --k");
                        const Equipartition p = parts_path.empty() ? equipartition(g.vertex_count(), k, seed)
                                                                   : Equipartition(g.vertex_count(), load_vertex_sets(parts_path));
                        ctx.emit(json{{"k", p.order()}, {"index", partition_index(g, p)}, {"blocks", p.blocks()}});
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // decompose
    {
        auto * sub = add("decompose", "Iterated regularization with a refined partition and subcluster selection");
        with_graph(sub, "--input");
        sub->add_option("--m", m, "Order of the initial equipartition")->capture_default_str();
        sub->add_option("--eps", eps_opt, "Overrides E(0)");
        sub->add_option("--efun", efun_text, "E function: a constant or a/(k+1)")->required();
        sub->add_option("--cap", cap, "Largest partition order")->capture_default_str();
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
        sub->add_option("--trials", trials, "Subcluster draws")->capture_default_str();
        sub->add_option("--mode", mode, "Certifier: exact, heuristic or automatic")->capture_default_str();
        sub->add_option("--exact-cap", exact_cap, "Largest side size checked exactly in automatic mode")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                EFunction e = EFunction::parse(efun_text);
                if (eps_opt)
                    e = e.with(0, *eps_opt);
                const Certifier certifier = make_certifier(mode, exact_cap);
                return std::visit(
                    [&](const auto & g) {
                        const auto d = decompose(g, m, e, DecomposeOptions{cap, certifier, seed});
                        const auto sel = select_subclusters(g, d, e, trials, seed, certifier);
                        const auto & s = d.pair_stats;
                        json stats{{"a_pairs", s.a_pairs}, {"a_irregular", s.a_irregular}, {"a_unknown", s.a_unknown},
                            {"b_pairs", s.b_pairs}, {"b_irregular", s.b_irregular}, {"b_unknown", s.b_unknown},
                            {"b_irregular_max_per_pair", s.b_irregular_max_per_pair}, {"deviating_subpairs", s.deviating_subpairs},
                            {"deviating_pairs", s.deviating_pairs}, {"bullet_ii", s.bullet_ii}, {"bullet_iii", s.bullet_iii},
                            {"bullet_iv", s.bullet_iv}};
                        json selection{{"chosen", sel.chosen}, {"a_prime", sel.a_prime}, {"irregular", sel.irregular},
                            {"deviating", sel.deviating}, {"draws", sel.draws}, {"exhaustive", sel.exhaustive},
                            {"min_fraction", sel.min_fraction}};
                        ctx.emit(json{{"efun", e.describe()}, {"k", d.k}, {"ell", d.ell}, {"iterations", d.iterations},
                            {"iteration_cap", d.iteration_cap}, {"index_trace", d.index_trace}, {"a", partition_json(d.a)},
                            {"b", partition_json(d.b)}, {"pair_stats", stats}, {"selection", selection}});
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // count-copies
    {
        auto * sub = add("count-copies", "Count spanning copies of a pattern across parts");
        with_graph(sub);
        sub->add_option("--pattern", pattern_path, "Pattern graph file")->required()->check(CLI::ExistingFile);
        sub->add_option("--parts", parts_path, "Parts JSON file, one part per pattern vertex")->required()->check(CLI::ExistingFile);
        sub->add_option("--eta", eta_opt, "Density threshold for the lower bound");
        sub->callback([&] {
            action = [&] {
                return std::visit(
                    [&](const auto & g) {
                        using G = std::decay_t<decltype(g)>;
                        const auto h = load_family<G>({pattern_path}).front();
                        const auto c = count_spanning_copies(g, h, load_vertex_sets(parts_path), eta_opt);
                        json report{{"count", c.count}, {"total", c.total}, {"bound", c.bound}, {"satisfied", c.satisfied}};
                        if (eta_opt) {
                            const auto constants = embedding_constants(*eta_opt, h.vertex_count());
                            report["eta"] = *eta_opt;
                            report["gamma"] = constants.gamma;
                            report["delta"] = constants.delta;
                        }
                        ctx.emit(report);
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // enum-types
    int r = 2;
    auto space_for = [&](bool digraph) {
        return digraph ? TypeSpace::dirtypes(palette_option(palette_name)) : TypeSpace::rtypes(r);
    };
    {
        auto * sub = add("enum-types", "Types up to k-max vertices into which no forbidden pattern embeds");
        sub->add_option("--forbid", forbid, "Forbidden pattern files")->required()->check(CLI::ExistingFile);
        sub->add_option("--k-max", k_max, "Largest type order")->capture_default_str();
        sub->add_option("--palette", palette_name, "Dir-type palette (P0..P4) for digraph patterns")->capture_default_str();
        sub->add_option("--cap", type_cap, "Largest number of label assignments visited")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                TypeFamily fam;
                if (is_digraph_file(forbid.front())) {
                    fam = enumerate_types(space_for(true), k_max, load_family<Digraph>(forbid), type_cap);
                } else {
                    const auto family = load_family<ColoredGraph>(forbid);
                    r = family.front().r();
                    fam = enumerate_types(space_for(false), k_max, family, type_cap);
                }
                json report = family_to_json(fam);
                report["count"] = fam.types.size();
                ctx.emit(report);
                return exit_ok;
            };
        });
    }
    // fk
    {
        auto * sub = add("fk", "Evaluate f_K at a distribution; prints a number");
        sub->add_option("--type", type_path, "Type JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--p", p_text, "r-types: p_1,...,p_r; dir-types: the bi probability")->required();
        sub->add_option("--q", q, "Dir-types: the per-arrow probability");
        sub->callback([&] {
            action = [&] {
                const TypeGraph t = load_type(type_path);
                const auto p = parse_list<double>(p_text, "probability");
                const double f = t.kind() == TypeKind::rtype ? f_k(t, ColorDistribution(p)) : f_k(t, arrow_distribution(p, q));
                ctx.emit(number_text(f) + "\n");
                return exit_ok;
            };
        });
    }
    // edit-distance
    {
        auto * sub = add("edit-distance", "Exact distance to the property avoiding the patterns; prints a number");
        with_graph(sub);
        sub->add_option("--forbid", forbid, "Forbidden pattern files")->required()->check(CLI::ExistingFile);
        sub->add_option("--palette", palette_name, "States a digraph pair may take")->capture_default_str();
        sub->add_option("--cap", dist_cap, "Largest n (0: 7 for r-graphs, 6 for digraphs)")->capture_default_str();
        sub->add_option("--witness", witness_path, "Write the closest graph in the property here");
        sub->callback([&] {
            action = [&] {
                return std::visit(
                    [&](const auto & g) {
                        using G = std::decay_t<decltype(g)>;
                        const auto result = distance_to_property(g, load_family<G>(forbid), DistanceOptions{dist_cap, palette_option(palette_name)});
                        if (! witness_path.empty())
                            save_graph(witness_path, AnyGraph(result.witness));
                        ctx.emit(std::to_string(result.distance) + "\n");
                        return exit_ok;
                    },
                    load_graph(graph_path));
            };
        });
    }
    // bound
    {
        auto * sub = add("bound", "Lower bound max_K f_K(p) C(n,2) over enumerated types");
        sub->add_option("--forbid", forbid, "Forbidden pattern files")->required()->check(CLI::ExistingFile);
        sub->add_option("--p", p_text, "r-graphs: p_1,...,p_r; digraphs: the bi probability")->required();
        sub->add_option("--q", q, "Digraphs: the per-arrow probability");
        sub->add_option("--n", n, "Vertex count")->required();
        sub->add_option("--k-max", k_max, "Largest type order")->capture_default_str();
        sub->add_option("--eps", eps_opt, "Also report the finite-n error terms for this epsilon");
        sub->add_option("--palette", palette_name, "Dir-type palette for digraph patterns")->capture_default_str();
        sub->add_option("--cap", type_cap, "Largest number of label assignments visited")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                const auto p = parse_list<double>(p_text, "probability");
                TypeFamily fam;
                std::function<LowerBound()> bound;
                if (is_digraph_file(forbid.front())) {
                    const auto dist = arrow_distribution(p, q);
                    fam = enumerate_types(space_for(true), k_max, load_family<Digraph>(forbid), type_cap);
                    bound = [&, dist] { return lower_bound_fk(dist, fam, n, eps_opt); };
                } else {
                    const auto family = load_family<ColoredGraph>(forbid);
                    r = family.front().r();
                    const ColorDistribution dist(p);
                    fam = enumerate_types(space_for(false), k_max, family, type_cap);
                    bound = [&, dist] { return lower_bound_fk(dist, fam, n, eps_opt); };
                }
                if (fam.types.empty()) {
                    ctx.emit(json{{"verdict", "no type found"}, {"n", n}, {"k_max", k_max}});
                    return exit_cap;
                }
                const LowerBound lb = bound();
                json report{{"verdict", "ok"}, {"n", n}, {"k_max", k_max}, {"types", fam.types.size()}, {"f", lb.f}, {"value", lb.value},
                    {"best_type", type_to_json(fam.types[lb.best_index])}};
                if (lb.error_terms) {
                    const auto & t = *lb.error_terms;
                    report["error_terms"] = {{"uneven", t.uneven}, {"diagonal", t.diagonal}, {"fluctuation", t.fluctuation},
                        {"color_slack", t.color_slack}, {"irregular", t.irregular}, {"total", t.total}};
                }
                ctx.emit(report);
                return exit_ok;
            };
        });
    }
    // sample
    {
        auto * sub = add("sample", "Seeded random r-graph or digraph");
        sub->add_option("--kind", kind, "rgraph or digraph")->capture_default_str()->check(CLI::IsMember({"rgraph", "digraph"}));
        sub->add_option("--n", n, "Vertex count")->required();
        sub->add_option("--p", p_text, "rgraph: p_1,...,p_r; digraph: the bi probability")->required();
        sub->add_option("--q", q, "digraph: the per-arrow probability");
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                const auto p = parse_list<double>(p_text, "probability");
                const AnyGraph g = kind == "rgraph" ? AnyGraph(sample_rgraph(n, ColorDistribution(p), seed))
                                                    : AnyGraph(sample_digraph(n, arrow_distribution(p, q), seed));
                ctx.emit(to_text(g));
                return exit_ok;
            };
        });
    }
    // experiment
    {
        auto * sub = add("experiment", "Exact distances of random graphs against the type lower bound");
        sub->add_option("--forbid", forbid, "Forbidden pattern files")->required()->check(CLI::ExistingFile);
        sub->add_option("--p", p_text, "r-graphs: p_1,...,p_r; digraphs: the bi probability")->required();
        sub->add_option("--q", q, "Digraphs: the per-arrow probability");
        sub->add_option("--n", n_text, "Vertex counts, comma separated")->required();
        sub->add_option("--seeds", seeds, "Samples per n")->capture_default_str();
        sub->add_option("--seed", seed, "Seed of the first sample")->capture_default_str();
        sub->add_option("--k-max", k_max, "Largest type order")->capture_default_str();
        sub->add_option("--palette", palette_name, "Dir-type palette and recoloring states for digraphs")->capture_default_str();
        sub->add_option("--cap", dist_cap, "Largest n for exact distances (0: default)")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                const auto p = parse_list<double>(p_text, "probability");
                const auto ns = parse_list<int>(n_text, "n");
                json report{{"k_max", k_max}, {"seeds", seeds}, {"runs", json::array()}};
                bool found = true;
                auto body = [&](const auto & family, auto sample, auto bound) {
                    for (int nv : ns) {
                        std::vector<long long> d(static_cast<std::size_t>(seeds));
                        for (int i = 0; i < seeds; ++i)
                            d[static_cast<std::size_t>(i)] =
                                distance_to_property(sample(nv, seed + static_cast<std::uint64_t>(i)), family,
                                    DistanceOptions{dist_cap, palette_option(palette_name)})
                                    .distance;
                        double mean = 0.0, var = 0.0;
                        for (long long x : d)
                            mean += static_cast<double>(x);
                        mean /= std::max(1, seeds);
                        for (long long x : d)
                            var += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
                        const double sd = seeds > 1 ? std::sqrt(var / (seeds - 1)) : 0.0;
                        json run{{"n", nv}, {"mean", mean}, {"stddev", sd},
                            {"min", d.empty() ? 0 : *std::min_element(d.begin(), d.end())},
                            {"max", d.empty() ? 0 : *std::max_element(d.begin(), d.end())}};
                        if (auto lb = bound(nv)) {
                            run["bound"] = lb->value;
                            run["f"] = lb->f;
                            run["gap"] = mean - lb->value;
                            run["gap_per_pair"] = (mean - lb->value) / (nv * (nv - 1) / 2.0);
                        } else {
                            run["bound"] = "no type found";
                            found = false;
                        }
                        report["runs"].push_back(run);
                    }
                };
                if (is_digraph_file(forbid.front())) {
                    const auto dist = arrow_distribution(p, q);
                    const auto family = load_family<Digraph>(forbid);
                    const auto fam = enumerate_types(space_for(true), k_max, family);
                    body(
                        family, [&](int nv, std::uint64_t s) { return sample_digraph(nv, dist, s); },
                        [&](int nv) { return fam.types.empty() ? std::nullopt : std::optional(lower_bound_fk(dist, fam, nv)); });
                } else {
                    const ColorDistribution dist(p);
                    const auto family = load_family<ColoredGraph>(forbid);
                    r = family.front().r();
                    const auto fam = enumerate_types(space_for(false), k_max, family);
                    body(
                        family, [&](int nv, std::uint64_t s) { return sample_rgraph(nv, dist, s); },
                        [&](int nv) { return fam.types.empty() ? std::nullopt : std::optional(lower_bound_fk(dist, fam, nv)); });
                }
                report["verdict"] = found ? "ok" : "no type found";
                ctx.emit(report);
                return found ? exit_ok : exit_cap;
            };
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        const CLI::App * target = &app;
        for (const auto * s : app.get_subcommands())
            target = s;
        out << target->help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << "\n";
        const CLI::App * target = &app;
        if (! args.empty())
            for (const auto * s : app.get_subcommands({}))
                if (s->get_name() == args.front())
                    target = s;
        err << target->help();
        return exit_invalid;
    }

    try {
        return action();
    } catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::CapExceeded:
        case ErrorKind::SearchSpaceTooLarge:
        case ErrorKind::TooLargeForExact:
        case ErrorKind::TooLargeForExhaustive:
            return exit_cap;
        default:
            return exit_invalid;
        }
    } catch (const std::exception & e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    }
}

} // namespace regracut
