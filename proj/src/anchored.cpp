#include "purepair/pipeline.hpp"
#include "purepair/rng.hpp"

#include <algorithm>
#include <numeric>

namespace purepair
{
    auto left_right_radius(const Blockade & b, int delta) -> std::pair<int, int>
    {
        auto radius = [&](Side side) {
            int a = 0;
            while (true) {
                auto t = build_t(delta, a + 1);
                if (t.size() > b.length() || ! find_directed_rainbow(b, t, {side, std::nullopt, std::nullopt}))
                    return a;
                ++a;
            }
        };
        if (b.length() == 0)
            return {0, 0};
        return {radius(Side::left), radius(Side::right)};
    }

    auto is_anchored(const Blockade & b, const AnchoredMinor & m, int delta, int alpha, int beta) -> AnchoredVerdict
    {
        auto fail = [](int bullet, std::string why) { return AnchoredVerdict{false, bullet, std::move(why)}; };
        int big_k = b.length();
        for (int p = 0; p < big_k; ++p)
            if (b.index(p) != p + 1)
                return fail(1, "blockade indices are not 1..K");
        if (m.k < 1 || m.k >= big_k)
            return fail(1, "k = " + std::to_string(m.k) + " outside 1..K-1");
        if (static_cast<int>(m.blocks.size()) != m.k + 1)
            return fail(1, "minor has " + std::to_string(m.blocks.size()) + " blocks, expected k+1");
        for (int i = 0; i <= m.k; ++i) {
            auto & blk = m.blocks[static_cast<std::size_t>(i)];
            int want = i < m.k ? i + 1 : big_k;
            if (blk.index != want)
                return fail(1, "minor index " + std::to_string(blk.index) + " where " + std::to_string(want) + " was expected");
            if (blk.vertices.empty() || ! blk.vertices.is_subset_of(b.block(want - 1)))
                return fail(1, "minor block " + std::to_string(want) + " is empty or leaves B_" + std::to_string(want));
        }

        VertexSet middle(b.host().size());
        for (int j = m.k + 1; j < big_k; ++j)
            middle |= b.block(j - 1);
        if (! m.y.is_subset_of(middle))
            return fail(2, "Y leaves the blocks strictly between k and K");

        auto ny = neighbourhood_of_set(b.host(), m.y);
        for (int i = 1; i < m.k; ++i)
            if (ny.intersects(m.blocks[static_cast<std::size_t>(i)].vertices))
                return fail(3, "Y has a neighbour in minor block " + std::to_string(i + 1));

        if (m.gamma1 < 0 || m.gamma1 > delta)
            return fail(4, "gamma1 = " + std::to_string(m.gamma1) + " outside 0..delta");
        if (m.gamma2 < 0 || m.gamma2 > 2 * delta)
            return fail(5, "gamma2 = " + std::to_string(m.gamma2) + " outside 0..2delta");
        auto q = build_q(m.gamma1, delta, alpha);
        auto r = build_r(m.gamma2, delta, alpha, beta);
        auto rooted_in = [&](const RootedTree & t, Side side, int v) {
            auto allowed = m.y;
            allowed.set(v);
            return find_directed_rainbow(b, t, {side, v, allowed}).has_value();
        };
        for (int v : m.blocks.front().vertices.members())
            if (! rooted_in(q, Side::left, v))
                return fail(4, "vertex " + std::to_string(v) + " of B'_1 roots no left-rainbow Q(" + std::to_string(m.gamma1) + ") in Y+v");
        for (int v : m.blocks.back().vertices.members())
            if (! rooted_in(r, Side::right, v))
                return fail(5, "vertex " + std::to_string(v) + " of B'_K roots no right-rainbow R(" + std::to_string(m.gamma2) + ") in Y+v");
        return {};
    }

    namespace
    {
        struct Copy
        {
            std::vector<int> vertices;
            int root;
        };

        // Greedily collect vertex-disjoint directed copies inside the given minor blocks.
        auto disjoint_copies(const Blockade & window, const RootedTree & t, Side side, std::int64_t limit) -> std::vector<Copy>
        {
            std::vector<Copy> out;
            VertexSet avail = window.vertices();
            while (static_cast<std::int64_t>(out.size()) < limit) {
                auto e = find_directed_rainbow(window, t, {side, std::nullopt, avail});
                if (! e)
                    break;
                for (int v : e->vertex)
                    avail.reset(v);
                out.push_back({e->vertex, e->vertex[static_cast<std::size_t>(t.root())]});
            }
            return out;
        }

        auto lowest_or_all(const VertexSet & s, int w) -> VertexSet
        {
            return s.count() <= w ? s : s.lowest(w);
        }
    }

    auto anchored_escalation(const Blockade & c, const EscalationParams & params) -> EscalationResult
    {
        EscalationResult out;
        int delta = params.delta, eta = params.eta;
        if (c.length() == 0)
            throw std::invalid_argument("anchored_escalation: empty blockade");
        for (int p = 0; p < c.length(); ++p)
            if (c.index(p) != p + 1)
                throw std::invalid_argument("anchored_escalation: blockade indices must be 1..K");
        if (! c.is_equicardinal())
            throw std::invalid_argument("anchored_escalation: blockade is not equicardinal");

        const Graph & g = c.host();
        int n = g.size();
        auto finding = [&](std::string claim, std::string detail) { out.findings.push_back({"escalation", std::move(claim), std::move(detail)}); };

        if (eta == 0) {
            int v = c.block(0).first();
            out.embedding = RainbowEmbedding{build_t(delta, 0).canonical_code(), {v}, {c.index(0)}};
            out.outcome = "single vertex";
            return out;
        }

        auto target = build_t(delta, eta);
        std::tie(out.alpha, out.beta) = left_right_radius(c, delta);
        if (out.alpha >= eta || out.beta >= eta) {
            Side side = out.alpha >= eta ? Side::left : Side::right;
            out.embedding = find_directed_rainbow(c, target, {side, std::nullopt, std::nullopt});
            out.outcome = std::string(side_name(side)) + "-rainbow T(delta,eta) from the radius search";
            return out;
        }
        if (params.use_fallback) {
            if (auto e = find_directed_rainbow(c, target, {Side::any, std::nullopt, std::nullopt})) {
                out.embedding = std::move(e);
                out.outcome = "rainbow T(delta,eta) from the backtracking fallback";
                return out;
            }
        }

        Blockade work = c;
        int alpha = out.alpha, beta = out.beta;
        if (alpha > beta) {
            work = reversed(c);
            std::swap(alpha, beta);
            out.reversed = true;
        }
        int big_k = work.length();
        int big_w = work.width();

        out.gamma3 = 0;
        while (out.gamma3 < delta && find_directed_rainbow(work, build_s(out.gamma3 + 1, delta, alpha), {Side::left, std::nullopt, std::nullopt}))
            ++out.gamma3;
        int gamma3 = out.gamma3;
        if (gamma3 > delta - 1) {
            finding("(1) gamma3 <= delta-1", "left-rainbow S(delta) exists although alpha is maximal");
            out.diagnostic = "claim (1) failed";
            return out;
        }
        auto s_tree = build_s(gamma3, delta, alpha);
        auto t_tree = build_t(delta, beta);
        int s = s_tree.size(), t = t_tree.size();

        AnchoredMinor minor;
        minor.blocks = work.blocks();
        minor.k = big_k - 1;
        minor.y = VertexSet(n);
        if (big_k < 2) {
            out.diagnostic = "length below 2: no anchored minor exists";
            return out;
        }
        auto start = is_anchored(work, minor, delta, alpha, beta);
        if (! start.anchored) {
            finding("initial anchoring", start.diagnostic);
            out.diagnostic = "the trivial minor is not anchored";
            return out;
        }

        std::int64_t tree_scale = 1;
        for (int i = 0; i <= eta; ++i)
            tree_scale *= delta;

        for (int round = 0; round < params.max_rounds; ++round) {
            EscalationRound rec;
            int gamma1 = minor.gamma1, gamma2 = minor.gamma2, gamma0 = gamma1 + gamma2;
            out.max_gamma0 = std::max(out.max_gamma0, gamma0);
            rec.gamma1 = gamma1;
            rec.gamma2 = gamma2;
            rec.gamma3 = gamma3;
            if (gamma1 > delta - 1 || gamma2 > 2 * delta - 1 || gamma0 > 3 * delta - 2) {
                finding("(1) gamma bounds", "gamma1 = " + std::to_string(gamma1) + ", gamma2 = " + std::to_string(gamma2));
                out.diagnostic = "claim (1) failed";
                out.rounds.push_back(rec);
                return out;
            }

            // equicardinal minor of width W'
            int w = big_w;
            for (auto & blk : minor.blocks)
                w = std::min(w, blk.vertices.count());
            for (auto & blk : minor.blocks)
                blk.vertices = lowest_or_all(blk.vertices, w);
            int k = minor.k;
            auto block_of = [&](int index) -> const VertexSet & {
                return index == big_k ? minor.blocks.back().vertices : minor.blocks[static_cast<std::size_t>(index - 1)].vertices;
            };
            rec.width = w;
            rec.k = k;
            rec.s = s;
            rec.t = t;
            int h = k + 1 - s - t;
            rec.h = h;
            if (static_cast<std::int64_t>(k) + 1 < big_k - 2 * tree_scale * gamma0)
                finding("minor length", "length " + std::to_string(k + 1) + " below K - 2 delta^(eta+1) gamma0");
            if (h < 2) {
                if (h < 1)
                    finding("(2) h >= 1", "h = " + std::to_string(h) + " with k = " + std::to_string(k) + ", s = " + std::to_string(s) + ", t = " + std::to_string(t));
                out.diagnostic = "minor too short to continue (h = " + std::to_string(h) + "); the length hypothesis is not met";
                out.rounds.push_back(rec);
                return out;
            }

            rec.r_parallel = w - params.invariance.floor_times(big_w);
            if (rec.r_parallel < 1) {
                finding("(3) r >= 1", "W' = " + std::to_string(w) + " is not above the invariance floor of W = " + std::to_string(big_w));
                out.diagnostic = "no room for parallel copies; the width hypothesis is not met";
                out.rounds.push_back(rec);
                return out;
            }

            std::vector<Block> left_window, right_window;
            for (int i = h; i < h + s; ++i)
                left_window.push_back({i, block_of(i)});
            for (int i = h + s; i <= k; ++i)
                right_window.push_back({i, block_of(i)});
            auto copies_e = disjoint_copies(Blockade(work.host_ptr(), left_window), s_tree, Side::left, rec.r_parallel);
            auto copies_f = disjoint_copies(Blockade(work.host_ptr(), right_window), t_tree, Side::right, rec.r_parallel);
            rec.copies_e = static_cast<int>(copies_e.size());
            rec.copies_f = static_cast<int>(copies_f.size());
            if (rec.copies_e < rec.r_parallel || rec.copies_f < rec.r_parallel)
                finding("(3) r disjoint copies", std::to_string(rec.copies_e) + " S-copies and " + std::to_string(rec.copies_f) + " T-copies, "
                    + std::to_string(rec.r_parallel) + " required");
            int r = std::min(rec.copies_e, rec.copies_f);
            if (r < 1) {
                out.diagnostic = "no parallel copies; support-uniformity or invariance is violated";
                out.rounds.push_back(rec);
                return out;
            }

            auto ri = static_cast<std::size_t>(r);
            std::vector<VertexSet> whole(ri, VertexSet(n)), inner(ri, VertexSet(n));
            std::vector<int> root_e(ri), root_f(ri);
            for (std::size_t i = 0; i < ri; ++i) {
                for (int v : copies_e[i].vertices)
                    whole[i].set(v);
                for (int v : copies_f[i].vertices)
                    whole[i].set(v);
                root_e[i] = copies_e[i].root;
                root_f[i] = copies_f[i].root;
                inner[i] = whole[i];
                inner[i].reset(root_e[i]);
                inner[i].reset(root_f[i]);
            }

            auto & first = minor.blocks.front().vertices;
            auto & last = minor.blocks.back().vertices;
            auto ends = (first | last).members();
            std::vector<std::vector<char>> meets(ends.size(), std::vector<char>(ri, 0)), internal(ends.size(), std::vector<char>(ri, 0));
            for (std::size_t e = 0; e < ends.size(); ++e) {
                auto & nb = g.neighbours(ends[e]);
                for (std::size_t i = 0; i < ri; ++i) {
                    meets[e][i] = nb.intersects(whole[i]);
                    internal[e][i] = nb.intersects(inner[i]);
                }
            }

            // D: maximal under single additions with a(D) <= r/2 and b(D) >= a(D)/4
            std::vector<char> in_d(ends.size(), 0), a_hit(ri, 0), b_hit(ri, 0);
            int a_d = 0, b_d = 0;
            for (bool grew = true; grew;) {
                grew = false;
                for (std::size_t e = 0; e < ends.size(); ++e) {
                    if (in_d[e])
                        continue;
                    int a2 = a_d, b2 = b_d;
                    for (std::size_t i = 0; i < ri; ++i) {
                        a2 += meets[e][i] && ! a_hit[i];
                        b2 += internal[e][i] && ! b_hit[i];
                    }
                    if (2 * a2 <= r && 4 * b2 >= a2) {
                        in_d[e] = 1;
                        grew = true;
                        a_d = a2;
                        b_d = b2;
                        for (std::size_t i = 0; i < ri; ++i) {
                            a_hit[i] = a_hit[i] || meets[e][i];
                            b_hit[i] = b_hit[i] || internal[e][i];
                        }
                    }
                }
            }
            int d_size = static_cast<int>(std::count(in_d.begin(), in_d.end(), 1));
            rec.a_d = a_d;
            rec.b_d = b_d;
            rec.d_size = d_size;
            if (params.epsilon) {
                auto eps = *params.epsilon;
                if (! eps.gt_ratio(d_size, n))
                    finding("(4) |D| < eps n", "|D| = " + std::to_string(d_size));
                // a(D) <= r/2 - eps n  <=>  (r - 2a) >= 2 eps n
                if (! (Fraction(2, 1) * eps).le_ratio(r - 2 * a_d, n))
                    finding("(4) a(D) <= r/2 - eps n", "a(D) = " + std::to_string(a_d) + ", r = " + std::to_string(r));
            }

            std::vector<std::size_t> z;
            int z_first = 0, z_last = 0;
            for (std::size_t e = 0; e < ends.size(); ++e) {
                if (in_d[e] || std::none_of(meets[e].begin(), meets[e].end(), [](char x) { return x; }))
                    continue;
                z.push_back(e);
                (first.test(ends[e]) ? z_first : z_last) += 1;
            }
            rec.z_size = static_cast<int>(z.size());
            // |Z| >= 2(W' - eps n)
            if (params.epsilon && rec.z_size < 2 * w && Fraction(2, 1) * *params.epsilon < Fraction(2 * w - rec.z_size, n))
                finding("(5) |Z| >= 2(W' - eps n)", "|Z| = " + std::to_string(rec.z_size) + ", W' = " + std::to_string(w));

            std::vector<std::size_t> cset;
            for (std::size_t i = 0; i < ri; ++i)
                if (! a_hit[i])
                    cset.push_back(i);
            rec.c_size = static_cast<int>(cset.size());
            if (rec.c_size != r - a_d)
                finding("|C| = r - a(D)", std::to_string(rec.c_size) + " vs " + std::to_string(r - a_d));

            int unhappy_bound = 0;
            for (auto e : z) {
                int m_all = 0, m_int = 0;
                for (auto i : cset) {
                    m_all += meets[e][i];
                    m_int += internal[e][i];
                }
                if (4 * m_int >= m_all)
                    ++unhappy_bound;
            }
            if (unhappy_bound > 0)
                finding("(6) internal meetings < 1/4 of meetings", std::to_string(unhappy_bound) + " vertices of Z violate it");
            if (z.empty() || cset.empty()) {
                out.diagnostic = z.empty() ? "Z is empty; the coherence hypothesis is violated" : "C is empty";
                out.rounds.push_back(rec);
                return out;
            }

            // (7) orders of C: identity first, then seeded shuffles
            std::vector<std::size_t> order = cset, best_order = cset;
            std::vector<int> happiness(ends.size(), 0);
            long best_num = -1, best_den = 1;
            bool ok = false;
            Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(round)));
            auto score = [&](const std::vector<std::size_t> & ord, std::vector<int> * hap) {
                int h1 = 0, hk = 0;
                for (auto e : z) {
                    int pos = 0;
                    for (std::size_t p = 0; p < ord.size(); ++p)
                        if (meets[e][ord[p]]) {
                            pos = internal[e][ord[p]] ? 0 : static_cast<int>(p) + 1;
                            break;
                        }
                    if (hap)
                        (*hap)[e] = pos;
                    if (pos > 0)
                        (first.test(ends[e]) ? h1 : hk) += 1;
                }
                return std::pair{h1, hk};
            };
            for (std::uint64_t trial = 0; trial < params.order_samples; ++trial) {
                if (trial > 0)
                    rng.shuffle(std::span<std::size_t>(order));
                ++rec.orders_tried;
                auto [h1, hk] = score(order, nullptr);
                if (2 * h1 >= z_first && 2 * hk >= z_last) {
                    best_order = order;
                    ok = true;
                    break;
                }
                // keep the order with the best worse-side ratio
                long num = std::min(static_cast<long>(h1) * std::max(z_last, 1), static_cast<long>(hk) * std::max(z_first, 1));
                long den = static_cast<long>(std::max(z_first, 1)) * std::max(z_last, 1);
                if (best_num < 0 || num * best_den > best_num * den) {
                    best_num = num;
                    best_den = den;
                    best_order = order;
                }
            }
            if (! ok)
                finding("(7) half of each side happy", "no order among " + std::to_string(rec.orders_tried) + " samples");
            score(best_order, &happiness);

            // m: least position with W'/4 happy vertices at or before it on one side
            int side = 0, m = 0;
            for (std::size_t p = 1; p <= best_order.size() && side == 0; ++p) {
                int c1 = 0, ck = 0;
                for (auto e : z)
                    if (happiness[e] > 0 && happiness[e] <= static_cast<int>(p))
                        (first.test(ends[e]) ? c1 : ck) += 1;
                if (4 * c1 >= w)
                    side = 1;
                else if (4 * ck >= w)
                    side = 2;
                m = static_cast<int>(p);
            }
            if (side == 0) {
                finding("quota W'/4 of happy vertices", "not reached on either side");
                int c1 = 0, ck = 0;
                for (auto e : z)
                    if (happiness[e] > 0)
                        (first.test(ends[e]) ? c1 : ck) += 1;
                side = c1 >= ck ? 1 : 2;
            }
            rec.m = m;

            VertexSet u_e(n), u_f(n), x_side_first(n), x_side_last(n);
            for (auto e : z) {
                if (happiness[e] == 0)
                    continue;
                int v = ends[e];
                (first.test(v) ? x_side_first : x_side_last).set(v);
                if (happiness[e] > m || (side == 1) != first.test(v))
                    continue;
                auto i = best_order[static_cast<std::size_t>(happiness[e] - 1)];
                if (g.adjacent(v, root_e[i]))
                    u_e.set(v);
                if (g.adjacent(v, root_f[i]))
                    u_f.set(v);
            }
            bool type_e = u_e.count() >= u_f.count();
            VertexSet u = type_e ? u_e : u_f;
            rec.type = std::string(side == 1 ? "(1," : "(K,") + (type_e ? "E)" : "F)");
            rec.u_size = u.count();
            if (8 * rec.u_size < w)
                finding("|U| >= W'/8", "|U| = " + std::to_string(rec.u_size) + ", W' = " + std::to_string(w));
            if (u.empty()) {
                out.diagnostic = "no happy vertices of a single type";
                out.rounds.push_back(rec);
                return out;
            }

            VertexSet y_new(n);
            for (int p = 0; p < m; ++p)
                y_new |= whole[best_order[static_cast<std::size_t>(p)]];
            auto ny = neighbourhood_of_set(g, y_new);
            for (int i = 2; i <= h - 1; ++i)
                if (8 * (block_of(i) - ny).count() < w)
                    finding("(8) W'/8 of B'_i anticomplete to Y'", "block " + std::to_string(i));

            if (side == 2 && type_e && gamma2 >= delta) {
                bool contradiction = find_directed_rainbow(work, build_s(gamma3 + 1, delta, alpha), {Side::left, std::nullopt, std::nullopt}).has_value();
                finding("(K,E) with gamma2 >= delta", contradiction ? "left-rainbow S(gamma3+1) exists, contradicting the choice of gamma3"
                                                                    : "expected left-rainbow S(gamma3+1) not found");
                out.diagnostic = "end case (K,E) reached with gamma2 >= delta";
                out.rounds.push_back(rec);
                return out;
            }

            int new_w = (w + 7) / 8;
            rec.new_width = new_w;
            AnchoredMinor next;
            next.k = h - 1;
            next.y = minor.y | y_new;
            next.gamma1 = gamma1 + (side == 1 ? 1 : 0);
            next.gamma2 = gamma2 + (side == 2 ? 1 : 0);
            bool short_block = false;
            auto take = [&](int index, VertexSet pool) {
                if (pool.count() < new_w)
                    short_block = true;
                if (pool.empty())
                    return false;
                next.blocks.push_back({index, lowest_or_all(pool, new_w)});
                return true;
            };
            bool built = take(1, side == 1 ? u : (x_side_first - ny));
            for (int i = 2; built && i <= h - 1; ++i)
                built = take(i, block_of(i) - ny);
            if (built)
                built = take(big_k, side == 2 ? u : (x_side_last - ny));
            if (short_block)
                finding("new blocks of size ceil(W'/8)", "some block has fewer candidates");
            if (! built) {
                out.diagnostic = "a block of the next minor would be empty";
                out.rounds.push_back(rec);
                return out;
            }

            auto verdict = is_anchored(work, next, delta, alpha, beta);
            rec.anchored_after = verdict.anchored;
            out.rounds.push_back(rec);
            if (! verdict.anchored) {
                finding("next minor anchored", verdict.diagnostic);
                out.diagnostic = "escalated minor failed condition " + std::to_string(verdict.failing);
                return out;
            }
            minor = std::move(next);
            out.max_gamma0 = std::max(out.max_gamma0, minor.gamma1 + minor.gamma2);
        }
        out.diagnostic = "round limit reached";
        return out;
    }
}
