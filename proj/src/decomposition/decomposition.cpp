#include "regracut/decomposition.hpp"

#include "regracut/density.hpp"
#include "regracut/error.hpp"
#include "regracut/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

namespace regracut {

EFunction EFunction::constant(double value)
{
    if (! (value > 0.0 && value < 1.0))
        fail(ErrorKind::BadEFunction, "constant value must lie in (0,1)");
    return EFunction(value, false);
}

EFunction EFunction::reciprocal(double a)
{
    if (! (a > 0.0 && a < 1.0))
        fail(ErrorKind::BadEFunction, "numerator of a/(k+1) must lie in (0,1)");
    return EFunction(a, true);
}

EFunction EFunction::parse(std::string_view text)
{
    static const std::regex plain(R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*)");
    static const std::regex ratio(R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*/\s*\(\s*k\s*\+\s*1\s*\)\s*)");
    const std::string s(text);
    std::smatch match;
    if (std::regex_match(s, match, ratio))
        return reciprocal(std::stod(match[1]));
    if (std::regex_match(s, match, plain))
        return constant(std::stod(match[1]));
    fail(ErrorKind::BadEFunction, "cannot parse E-function '" + s + "'; expected a number or a/(k+1)");
}

EFunction EFunction::with(int k, double value) const
{
    if (k < 0)
        fail(ErrorKind::BadEFunction, "E-function argument must be nonnegative");
    if (! (value > 0.0 && value < 1.0))
        fail(ErrorKind::BadEFunction, "E-function values must lie in (0,1)");
    EFunction copy = *this;
    copy.table_[k] = value;
    return copy;
}

double EFunction::raw(int k) const
{
    return reciprocal_ ? a_ / (k + 1.0) : a_;
}

double EFunction::operator()(int k) const
{
    // Both default rules are nonincreasing, so only table entries up to k
    // can lower the running minimum.
    double value = raw(k);
    for (const auto & [key, v] : table_) {
        if (key > k)
            break;
        value = std::min(value, v);
    }
    return value;
}

std::string EFunction::describe() const
{
    std::ostringstream out;
    out << a_;
    if (reciprocal_)
        out << "/(k+1)";
    for (const auto & [key, v] : table_)
        out << "; E(" << key << ")=" << v;
    return out.str();
}

namespace {

template <PairColoring G>
double index_or_zero(const G & g, const Equipartition & p)
{
    return p.order() < 2 ? 0.0 : partition_index(g, p);
}

std::size_t pair_count(int k)
{
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2;
}

// Reports for every pair i < j of blocks, row-major.
template <PairColoring G>
std::vector<RegularityReport> certify_pairs(
    const G & g, const std::vector<VertexSet> & blocks, double gamma, const Certifier & certifier)
{
    const int k = static_cast<int>(blocks.size());
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(pair_count(k));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            pairs.emplace_back(i, j);
    std::vector<RegularityReport> reports(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t t) {
        const auto & a = blocks[static_cast<std::size_t>(pairs[t].first)];
        const auto & b = blocks[static_cast<std::size_t>(pairs[t].second)];
        reports[t] = certifier.certify(g, std::span<const Vertex>(a), std::span<const Vertex>(b), gamma);
    });
    return reports;
}

struct Refinement {
    std::vector<VertexSet> blocks;
    std::vector<int> parent;
};

// Splits every block into ell parts seeded by the Venn cells of the witness
// sets inside it. Returns nothing when ell would drop below 2.
std::optional<Refinement> refine_by_witnesses(
    const Equipartition & p, const std::vector<RegularityReport> & reports, int cap)
{
    const int k = p.order();
    std::vector<std::vector<const VertexSet *>> touching(static_cast<std::size_t>(k));
    std::size_t t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t)
            if (reports[t].witness) {
                touching[static_cast<std::size_t>(i)].push_back(&reports[t].witness->a_prime);
                touching[static_cast<std::size_t>(j)].push_back(&reports[t].witness->b_prime);
            }

    std::vector<std::vector<VertexSet>> cells(static_cast<std::size_t>(k));
    std::size_t most_cells = 1;
    for (int i = 0; i < k; ++i) {
        const auto & sets = touching[static_cast<std::size_t>(i)];
        std::map<std::vector<bool>, VertexSet> by_signature;
        for (Vertex v : p.block(i)) {
            std::vector<bool> signature(sets.size());
            for (std::size_t s = 0; s < sets.size(); ++s)
                signature[s] = std::binary_search(sets[s]->begin(), sets[s]->end(), v);
            by_signature[signature].push_back(v);
        }
        auto & list = cells[static_cast<std::size_t>(i)];
        for (auto & [signature, cell] : by_signature)
            list.push_back(std::move(cell));
        std::sort(list.begin(), list.end(), [](const VertexSet & x, const VertexSet & y) {
            return x.size() != y.size() ? x.size() > y.size() : x.front() < y.front();
        });
        most_cells = std::max(most_cells, list.size());
    }

    const int ell = std::min({static_cast<int>(most_cells), cap / k, p.min_block_size()});
    if (ell < 2)
        return std::nullopt;

    Refinement out;
    for (int i = 0; i < k; ++i) {
        auto & list = cells[static_cast<std::size_t>(i)];
        const int size = static_cast<int>(p.block(i).size());
        std::vector<VertexSet> parts(static_cast<std::size_t>(ell));
        VertexSet pool;
        for (std::size_t c = 0; c < list.size(); ++c) {
            if (c < parts.size())
                parts[c] = std::move(list[c]);
            else
                pool.insert(pool.end(), list[c].begin(), list[c].end());
        }
        for (int j = 0; j < ell; ++j) {
            auto & part = parts[static_cast<std::size_t>(j)];
            const std::size_t target = static_cast<std::size_t>(size / ell + (j < size % ell ? 1 : 0));
            if (part.size() > target) {
                pool.insert(pool.end(), part.begin() + static_cast<std::ptrdiff_t>(target), part.end());
                part.resize(target);
            }
        }
        std::sort(pool.begin(), pool.end());
        std::size_t next = 0;
        for (int j = 0; j < ell; ++j) {
            auto & part = parts[static_cast<std::size_t>(j)];
            const std::size_t target = static_cast<std::size_t>(size / ell + (j < size % ell ? 1 : 0));
            while (part.size() < target)
                part.push_back(pool[next++]);
            out.blocks.push_back(std::move(part));
            out.parent.push_back(i);
        }
    }
    return out;
}

Equipartition without_parent(const Equipartition & p)
{
    return Equipartition(p.vertex_count(), p.blocks());
}

} // namespace

template <PairColoring G>
RegularizeResult regularize(const G & g, int m, double eps, const RegularizeOptions & options)
{
    const int n = g.vertex_count();
    if (! (eps > 0.0 && eps < 1.0))
        fail(ErrorKind::BadEFunction, "eps must lie in (0,1)");
    if (! options.initial) {
        if (m < 1)
            fail(ErrorKind::BadOrder, "m must be at least 1");
        if (n < m)
            fail(ErrorKind::GraphTooSmall, "graph has fewer than m vertices");
    } else if (options.initial->vertex_count() != n) {
        fail(ErrorKind::BadPartition, "starting partition and graph have different vertex counts");
    }

    Equipartition current = options.initial ? without_parent(*options.initial) : equipartition(n, m, options.seed);
    const double threshold = g.color_count() * std::pow(eps, 4) / 64.0;
    std::vector<int> root(static_cast<std::size_t>(current.order()));
    std::iota(root.begin(), root.end(), 0);
    bool refined = false, last_step = false;

    RegularizeResult result{current, {index_or_zero(g, current)}};
    while (true) {
        ++result.sweeps;
        const auto reports = certify_pairs(g, current.blocks(), eps, options.certifier);
        result.irregular_pairs = 0;
        result.unknown_pairs = 0;
        for (const auto & r : reports) {
            result.irregular_pairs += r.verdict == Verdict::irregular;
            result.unknown_pairs += r.verdict == Verdict::unknown;
        }
        const double k = current.order();
        if (result.irregular_pairs <= eps * k * k + density_tolerance || last_step)
            break;

        auto next = refine_by_witnesses(current, reports, options.cap);
        if (! next) {
            result.cap_reached = true;
            break;
        }
        for (auto & parent : next->parent)
            parent = root[static_cast<std::size_t>(parent)];
        root = next->parent;
        refined = true;

        Equipartition finer(n, std::move(next->blocks));
        const double gain = index_or_zero(g, finer) - result.index_trace.back();
        result.index_trace.push_back(gain + result.index_trace.back());
        current = std::move(finer);
        if (gain <= threshold)
            last_step = true;
    }
    result.partition = refined ? Equipartition(n, current.blocks(), root) : current;
    return result;
}

int decomposition_iteration_cap(int r, double eps)
{
    return static_cast<int>(std::floor(64.0 / (r * std::pow(eps, 4)))) + 1;
}

namespace {

// Per-sub-pair data, indexed [pair i<i' row-major][j * ell + j'].
struct SubPairData {
    int k = 0, ell = 0;
    std::vector<std::vector<Verdict>> verdict;
    std::vector<std::vector<char>> deviating;
};

// children[i] lists the blocks of b inside block i of a, in b's order.
std::vector<std::vector<int>> children_of(const Equipartition & a, const Equipartition & b)
{
    if (! refines(b, a))
        fail(ErrorKind::BadPartition, "second partition does not refine the first");
    const auto owner = a.block_of();
    std::vector<std::vector<int>> children(static_cast<std::size_t>(a.order()));
    for (int j = 0; j < b.order(); ++j)
        children[static_cast<std::size_t>(owner[static_cast<std::size_t>(b.block(j).front())])].push_back(j);
    for (const auto & c : children)
        if (c.size() != children.front().size())
            fail(ErrorKind::BadPartition, "blocks are split into different numbers of parts");
    return children;
}

template <PairColoring G>
SubPairData sub_pair_data(const G & g, const Equipartition & a, const Equipartition & b, double gamma, double eps0,
    const Certifier & certifier)
{
    const auto children = children_of(a, b);
    SubPairData data;
    data.k = a.order();
    data.ell = static_cast<int>(children.front().size());
    const auto coarse = block_pair_densities(g, a.blocks());
    const auto fine = block_pair_densities(g, b.blocks());
    const int kb = b.order();
    auto fine_index = [kb](int x, int y) {
        // position of (min, max) in the row-major i<j listing
        const int i = std::min(x, y), j = std::max(x, y);
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * kb - i - 1) / 2
            + static_cast<std::size_t>(j - i - 1);
    };

    std::vector<std::tuple<std::size_t, std::size_t, int, int>> jobs;
    std::size_t t = 0;
    for (int i = 0; i < data.k; ++i)
        for (int i2 = i + 1; i2 < data.k; ++i2, ++t)
            for (int j = 0; j < data.ell; ++j)
                for (int j2 = 0; j2 < data.ell; ++j2)
                    jobs.emplace_back(t, static_cast<std::size_t>(j * data.ell + j2),
                        children[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                        children[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j2)]);

    const std::size_t slots = static_cast<std::size_t>(data.ell) * static_cast<std::size_t>(data.ell);
    data.verdict.assign(t, std::vector<Verdict>(slots, Verdict::regular));
    data.deviating.assign(t, std::vector<char>(slots, 0));
    parallel_for(jobs.size(), [&](std::size_t q) {
        const auto [pair, slot, x, y] = jobs[q];
        const auto & bx = b.block(x);
        const auto & by = b.block(y);
        data.verdict[pair][slot]
            = certifier.certify(g, std::span<const Vertex>(bx), std::span<const Vertex>(by), gamma).verdict;
        // Block pair densities are stored from the lower to the higher
        // index; for digraphs the reverse direction swaps back and fwd.
        DensityVector d = fine[fine_index(x, y)];
        if (x > y)
            d = density_unchecked(g, std::span<const Vertex>(bx), std::span<const Vertex>(by));
        data.deviating[pair][slot] = linf_distance(coarse[pair], d) >= eps0 - density_tolerance;
    });
    return data;
}

std::size_t saturating_power(std::size_t base, int exponent, std::size_t limit)
{
    std::size_t value = 1;
    for (int i = 0; i < exponent; ++i) {
        if (value > limit / std::max<std::size_t>(base, 1))
            return limit + 1;
        value *= base;
    }
    return value;
}

} // namespace

template <PairColoring G>
PairStats compute_pair_stats(
    const G & g, const Equipartition & a, const Equipartition & b, const EFunction & e, const Certifier & certifier)
{
    const int k = a.order();
    const double eps0 = e(0), epsk = e(k);
    PairStats stats;
    stats.a_pairs = static_cast<int>(pair_count(k));
    for (const auto & r : certify_pairs(g, a.blocks(), eps0, certifier)) {
        stats.a_irregular += r.verdict == Verdict::irregular;
        stats.a_unknown += r.verdict == Verdict::unknown;
    }

    const auto data = sub_pair_data(g, a, b, epsk, eps0, certifier);
    const double ell2 = static_cast<double>(data.ell) * data.ell;
    for (std::size_t t = 0; t < data.verdict.size(); ++t) {
        int irregular = 0, deviating = 0;
        for (std::size_t s = 0; s < data.verdict[t].size(); ++s) {
            ++stats.b_pairs;
            irregular += data.verdict[t][s] == Verdict::irregular;
            stats.b_unknown += data.verdict[t][s] == Verdict::unknown;
            deviating += data.deviating[t][s];
        }
        stats.b_irregular += irregular;
        stats.b_irregular_max_per_pair = std::max(stats.b_irregular_max_per_pair, irregular);
        stats.deviating_subpairs.push_back(deviating);
        stats.deviating_pairs += deviating > eps0 * ell2 + density_tolerance;
    }
    const double pairs = stats.a_pairs;
    stats.bullet_ii = stats.a_irregular <= eps0 * pairs + density_tolerance;
    stats.bullet_iii = stats.b_irregular <= epsk * ell2 + density_tolerance;
    stats.bullet_iv = stats.deviating_pairs <= eps0 * pairs + density_tolerance;
    return stats;
}

template <PairColoring G>
DecompositionResult decompose(const G & g, int m, const EFunction & e, const DecomposeOptions & options)
{
    const int n = g.vertex_count();
    if (m < 1)
        fail(ErrorKind::BadOrder, "m must be at least 1");
    m = std::max(m, 2);
    if (n < m)
        fail(ErrorKind::GraphTooSmall, "graph has " + std::to_string(n) + " vertices, fewer than m=" + std::to_string(m));
    const int cap = std::min(options.cap, n);
    if (cap < m)
        fail(ErrorKind::CapExceeded, "order cap " + std::to_string(options.cap) + " is below m=" + std::to_string(m));

    const double eps = e(0);
    const double threshold = g.color_count() * std::pow(eps, 4) / 64.0;
    const int iteration_cap = decomposition_iteration_cap(g.color_count(), eps);

    RegularizeOptions first{cap, options.certifier, options.seed, std::nullopt};
    Equipartition previous = without_parent(regularize(g, m, eps, first).partition);
    std::vector<double> trace{partition_index(g, previous)};
    int iterations = 1;
    while (true) {
        RegularizeOptions step{cap, options.certifier, options.seed + static_cast<std::uint64_t>(iterations), previous};
        auto next = regularize(g, previous.order(), e(previous.order()), step).partition;
        if (! next.has_parent()) {
            std::vector<int> identity(static_cast<std::size_t>(next.order()));
            std::iota(identity.begin(), identity.end(), 0);
            next = Equipartition(n, next.blocks(), identity);
        }
        trace.push_back(partition_index(g, next));
        ++iterations;
        if (trace.back() - trace[trace.size() - 2] <= threshold || iterations >= iteration_cap) {
            // Regroup B parent-major so that block i * ell + j is V_ij.
            const int k = previous.order();
            std::vector<VertexSet> grouped;
            std::vector<int> parent;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < next.order(); ++j)
                    if (next.parent(j) == i) {
                        grouped.push_back(next.block(j));
                        parent.push_back(i);
                    }
            Equipartition b(n, std::move(grouped), std::move(parent));
            const int ell = b.order() / k;
            DecompositionResult result{previous, std::move(b), k, ell, iterations, iteration_cap, std::move(trace), {}};
            result.pair_stats = compute_pair_stats(g, result.a, result.b, e, options.certifier);
            return result;
        }
        previous = without_parent(next);
    }
}

template <PairColoring G>
SubclusterSelection select_subclusters(const G & g, const DecompositionResult & d, const EFunction & e, int trials,
    std::uint64_t seed, const Certifier & certifier)
{
    const int k = d.a.order();
    const auto children = children_of(d.a, d.b);
    const auto data = sub_pair_data(g, d.a, d.b, e(k), e(0), certifier);
    const int ell = data.ell;

    auto score = [&](const std::vector<int> & choice) {
        std::pair<int, int> q{0, 0};
        std::size_t t = 0;
        for (int i = 0; i < k; ++i)
            for (int i2 = i + 1; i2 < k; ++i2, ++t) {
                const std::size_t slot = static_cast<std::size_t>(choice[static_cast<std::size_t>(i)] * ell
                    + choice[static_cast<std::size_t>(i2)]);
                q.first += data.verdict[t][slot] == Verdict::irregular;
                q.second += data.deviating[t][slot];
            }
        return q;
    };

    SubclusterSelection best;
    std::pair<int, int> best_score{std::numeric_limits<int>::max(), 0};
    auto consider = [&](const std::vector<int> & choice) {
        ++best.draws;
        const auto q = score(choice);
        if (q < best_score) {
            best_score = q;
            best.chosen = choice;
        }
    };

    const std::size_t budget = static_cast<std::size_t>(std::max(trials, 1));
    std::vector<int> choice(static_cast<std::size_t>(k), 0);
    if (saturating_power(static_cast<std::size_t>(ell), k, budget) <= budget) {
        best.exhaustive = true;
        while (true) {
            consider(choice);
            int pos = k - 1;
            while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == ell)
                choice[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0)
                break;
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, ell - 1);
        for (std::size_t draw = 0; draw < budget; ++draw) {
            for (auto & c : choice)
                c = pick(rng);
            consider(choice);
        }
    }

    best.irregular = best_score.first;
    best.deviating = best_score.second;
    best.min_fraction = 1.0;
    for (int i = 0; i < k; ++i) {
        const int block = children[static_cast<std::size_t>(i)][static_cast<std::size_t>(best.chosen[static_cast<std::size_t>(i)])];
        best.a_prime.push_back(d.b.block(block));
        best.min_fraction = std::min(best.min_fraction, static_cast<double>(d.b.block(block).size()) / g.vertex_count());
    }
    return best;
}

template <PairColoring G>
SlicingReport verify_slicing(const G & g, std::span<const Vertex> a, std::span<const Vertex> b,
    std::span<const Vertex> a_sub, std::span<const Vertex> b_sub, double gamma)
{
    auto inside = [](std::span<const Vertex> part, std::span<const Vertex> set) {
        VertexSet sorted(set.begin(), set.end());
        std::sort(sorted.begin(), sorted.end());
        return std::all_of(part.begin(), part.end(),
            [&](Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); });
    };
    if (! inside(a_sub, a) || ! inside(b_sub, b))
        fail(ErrorKind::BadPartition, "slice is not contained in its set");
    const auto whole = density_vector(g, a, b);
    const auto slice = density_vector(g, a_sub, b_sub);

    SlicingReport report;
    report.eps = std::min(static_cast<double>(a_sub.size()) / static_cast<double>(a.size()),
        static_cast<double>(b_sub.size()) / static_cast<double>(b.size()));
    if (report.eps < gamma - density_tolerance)
        fail(ErrorKind::SliceTooSmall, "slice fraction is below gamma");
    report.eta = std::max(2.0, 1.0 / report.eps) * gamma;
    report.deviation = linf_distance(whole, slice);

    if (report.eta >= 1.0)
        report.verdict = Verdict::regular;
    else if (static_cast<int>(std::min(a_sub.size(), b_sub.size())) <= default_exhaustive_cap)
        report.verdict = is_regular_exact(g, a_sub, b_sub, report.eta, std::numeric_limits<int>::max()).verdict;
    else
        report.verdict = irregularity_witness_heuristic(g, a_sub, b_sub, report.eta).verdict;

    report.holds = report.deviation <= gamma + density_tolerance && report.verdict != Verdict::irregular;
    report.caveat = report.holds && report.verdict == Verdict::unknown;
    return report;
}

#define REGRACUT_INSTANTIATE(G)                                                                                    \
    template RegularizeResult regularize<G>(const G &, int, double, const RegularizeOptions &);                   \
    template PairStats compute_pair_stats<G>(                                                                      \
        const G &, const Equipartition &, const Equipartition &, const EFunction &, const Certifier &);            \
    template DecompositionResult decompose<G>(const G &, int, const EFunction &, const DecomposeOptions &);       \
    template SubclusterSelection select_subclusters<G>(                                                            \
        const G &, const DecompositionResult &, const EFunction &, int, std::uint64_t, const Certifier &);          \
    template SlicingReport verify_slicing<G>(const G &, std::span<const Vertex>, std::span<const Vertex>,          \
        std::span<const Vertex>, std::span<const Vertex>, double);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
