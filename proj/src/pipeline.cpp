#include "purepair/errors.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/pipeline.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace purepair
{
    auto paper_params(int delta, int eta, int tree_size) -> PipelineParams
    {
        if (delta < 2 || eta < 0 || tree_size < 1)
            throw std::invalid_argument("paper_params: need delta >= 2, eta >= 0, |T| >= 1");
        constexpr auto limit = std::numeric_limits<std::int64_t>::max() / 4;
        auto checked_mul = [&](std::int64_t a, std::int64_t b) {
            if (a != 0 && b > limit / a)
                throw std::overflow_error("paper_params: constants do not fit in 64 bits for delta = " + std::to_string(delta) + ", eta = "
                    + std::to_string(eta));
            return a * b;
        };
        std::int64_t two_9d = 1;
        for (int i = 0; i < 9 * delta; ++i)
            two_9d = checked_mul(two_9d, 2);
        std::int64_t delta_pow = 1;
        for (int i = 0; i <= eta; ++i)
            delta_pow = checked_mul(delta_pow, delta);

        PipelineParams p;
        p.mode = PipelineMode::paper;
        p.delta = delta;
        p.eta = eta;
        p.lambda = Fraction(1, checked_mul(two_9d, delta_pow));
        p.kappa = Fraction(1, checked_mul(checked_mul(two_9d, delta_pow), 2));
        p.invariance = Fraction(1, two_9d);
        if (delta_pow > std::numeric_limits<int>::max())
            throw std::overflow_error("paper_params: tau does not fit");
        p.tau = static_cast<int>(delta_pow);
        // ceil((|T|-1)/kappa), kappa = 1/den
        auto r = checked_mul(tree_size - 1, p.kappa.den());
        if (r > std::numeric_limits<int>::max())
            throw std::overflow_error("paper_params: r does not fit");
        p.r_group = static_cast<int>(std::max<std::int64_t>(1, r));
        return p;
    }

    namespace
    {
        auto t_size(int delta, int eta) -> std::int64_t
        {
            std::int64_t size = 1, level = 1;
            for (int i = 1; i <= eta; ++i) {
                level *= delta;
                size += level;
            }
            return size;
        }
    }

    auto tree_shape(const Graph & tree) -> TreeShape
    {
        if (! is_tree(tree))
            throw std::invalid_argument("tree_shape: not a tree");
        std::optional<TreeShape> best;
        for (int root = 0; root < tree.size(); ++root) {
            auto rt = root_tree(tree, root);
            int delta = std::max(2, tree.degree(root));
            for (int v = 0; v < tree.size(); ++v)
                delta = std::max(delta, static_cast<int>(rt.children(v).size()));
            TreeShape s{delta, rt.height(), root};
            if (! best || t_size(s.delta, s.eta) < t_size(best->delta, best->eta)
                || (t_size(s.delta, s.eta) == t_size(best->delta, best->eta) && s.eta < best->eta))
                best = s;
        }
        return *best;
    }

    namespace
    {
        auto hex(std::uint64_t x) -> std::string
        {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
            return buf;
        }

        auto embedding_json(const RainbowEmbedding & e) -> nlohmann::json
        {
            return {{"pattern", e.pattern}, {"vertices", e.vertex}, {"blocks", e.block_index}};
        }

        /// A root of `tree` under which it sits inside T(delta, eta), with the embedding.
        auto fit_in_t(const Graph & tree, int delta, int eta) -> std::optional<std::pair<RootedTree, std::vector<int>>>
        {
            auto big = build_t(delta, eta);
            for (int root = 0; root < tree.size(); ++root) {
                auto rt = root_tree(tree, root);
                if (auto emb = rooted_embedding(big, rt))
                    return std::pair{rt, *emb};
            }
            return std::nullopt;
        }
    }

    auto rainbow_pipeline(const Blockade & b, const Graph & tree, const PipelineParams & in) -> PipelineResult
    {
        PipelineResult out;
        PipelineParams params = in;
        if (params.mode == PipelineMode::paper) {
            auto p = paper_params(in.delta, in.eta, tree.size());
            params.lambda = p.lambda;
            params.kappa = p.kappa;
            params.invariance = p.invariance;
            params.tau = p.tau;
            params.r_group = p.r_group;
        }
        auto fp = hex(b.fingerprint());
        auto record = [&](nlohmann::json j) { out.log.push_back(std::move(j)); };
        auto stop = [&](std::string phase, std::string outcome) {
            out.stopped_phase = std::move(phase);
            out.outcome = std::move(outcome);
            return out;
        };
        auto finding = [&](std::string phase, std::string claim, std::string detail) {
            out.findings.push_back({std::move(phase), std::move(claim), std::move(detail)});
        };
        // the independent check every emitted embedding must pass
        auto accept = [&](const std::string & phase, RainbowEmbedding e) -> bool {
            auto problem = verify_rainbow(b, tree, e);
            if (! problem.empty()) {
                finding(phase, "embedding verifies", problem);
                return false;
            }
            out.embedding = std::move(e);
            return true;
        };

        if (! is_tree(tree))
            throw std::invalid_argument("rainbow_pipeline: pattern is not a tree");
        auto fit = fit_in_t(tree, params.delta, params.eta);
        record({{"phase", "setup"},
            {"fingerprint", fp},
            {"mode", params.mode == PipelineMode::paper ? "paper" : "toy"},
            {"n", b.host().size()},
            {"length", b.length()},
            {"width", b.width()},
            {"tree_size", tree.size()},
            {"delta", params.delta},
            {"eta", params.eta},
            {"lambda", params.lambda.to_string()},
            {"kappa", params.kappa.to_string()},
            {"invariance", params.invariance.to_string()},
            {"tau", params.tau},
            {"r", params.r_group},
            {"epsilon", params.epsilon ? nlohmann::json(params.epsilon->to_string()) : nlohmann::json(nullptr)},
            {"overrides", params.overrides},
            {"tree_fits", fit.has_value()}});
        if (! fit)
            return stop("setup", "tree is not contained in T(delta, eta)");

        if (! params.skip_fallback) {
            auto e = find_rainbow_pattern(b, tree);
            record({{"phase", "fallback"}, {"fingerprint", fp}, {"found", e.has_value()}});
            if (e && accept("fallback", *e))
                return stop("fallback", "rainbow copy from the direct search");
        }

        // minor
        TraceMemo memo;
        int r = params.r_group;
        std::optional<Blockade> minor;
        {
            nlohmann::json rec{{"phase", "minor"}, {"fingerprint", fp}};
            try {
                auto descent = cost_descent(b, params.kappa, params.tau, params.descent, &memo);
                rec["descent_steps"] = descent.steps.size();
                rec["cost_before"] = descent.initial_cost;
                rec["cost_after"] = descent.final_cost;
                rec["width_after_descent"] = descent.blockade.width();
                rec["descent_verdict"] = verdict_name(descent.verdict);
                auto probe = extract_support_uniform(descent.blockade, 1, params.tau, params.extract, &memo);
                int surviving = probe.rounds.empty() ? descent.blockade.length() : probe.rounds.back().second;
                int k = params.minor_length > 0 ? params.minor_length : surviving / r * r;
                rec["surviving"] = surviving;
                rec["k"] = k;
                rec["extract_budget_hit"] = probe.budget_hit;
                if (k < r || k % r != 0) {
                    rec["error"] = "minor length " + std::to_string(k) + " is not a positive multiple of r";
                    record(rec);
                    return stop("minor", "insufficient length for grouping");
                }
                auto extract = extract_support_uniform(descent.blockade, k, params.tau, params.extract, &memo);
                minor = extract.blockade;
                auto uniform = is_support_uniform(*minor, params.tau, params.extract.execution, &memo);
                rec["uniform"] = uniform.uniform;
                if (! uniform.uniform)
                    finding("minor", "support-uniform", "tree " + uniform.tree);
                InvarianceVerdict inv;
                try {
                    inv = is_support_invariant(*minor, params.kappa, params.tau, params.descent.verify, &memo);
                }
                catch (const BudgetExceeded & e) {
                    inv.verdict = Verdict::unverified;
                    inv.note = e.what();
                }
                rec["invariant"] = verdict_name(inv.verdict);
                rec["invariance_checked"] = inv.checked;
                if (! inv.note.empty())
                    rec["invariance_note"] = inv.note;
                if (inv.verdict == Verdict::refuted)
                    finding("minor", "support-invariant", "a contraction shrinks the trace of " + inv.witness->tree);
                rec["width"] = minor->width();
                rec["length"] = minor->length();
                rec["indices"] = minor->indices();
            }
            catch (const InsufficientLength & e) {
                rec["error"] = e.what();
                record(rec);
                return stop("minor", "insufficient length");
            }
            catch (const BudgetExceeded & e) {
                rec["error"] = e.what();
                record(rec);
                return stop("minor", "budget exhausted");
            }
            record(rec);
        }

        // concave
        ConcaveOutcome concave;
        {
            nlohmann::json rec{{"phase", "concave"}, {"fingerprint", hex(minor->fingerprint())}};
            try {
                concave = build_concave(*minor, tree, params.kappa, params.lambda, r, params.leaf, params.concavity, &memo);
            }
            catch (const BudgetExceeded & e) {
                rec["error"] = e.what();
                record(rec);
                return stop("concave", "budget exhausted");
            }
            rec["orderings_tried"] = concave.orderings_tried;
            rec["leaf_extension"] = concave.copy.has_value();
            if (concave.copy) {
                rec["embedding"] = embedding_json(*concave.copy);
                record(rec);
                if (accept("concave", *concave.copy))
                    return stop("concave", "rainbow copy from a leaf extension");
                return stop("concave", "leaf extension failed verification");
            }
            rec["grouped_length"] = concave.grouped->length();
            rec["grouped_width"] = concave.grouped->width();
            rec["concavity"] = verdict_name(concave.concavity.verdict);
            rec["concavity_checked"] = concave.concavity.checked;
            rec["concavity_mode"] = verify_mode_name(params.concavity.mode);
            if (concave.concavity.witness) {
                auto & w = *concave.concavity.witness;
                rec["witness"] = {{"blocks", {w.h1, w.h2, w.h3}}, {"x", w.x.members()}};
                finding("concave", "lambda-concave", "blocks " + std::to_string(w.h1) + "," + std::to_string(w.h2) + "," + std::to_string(w.h3));
            }
            record(rec);
        }

        // escalation on the grouped blockade
        EscalationParams ep;
        ep.delta = params.delta;
        ep.eta = params.eta;
        ep.lambda = params.lambda;
        ep.invariance = params.invariance;
        ep.epsilon = params.epsilon;
        ep.order_samples = params.order_samples;
        ep.seed = params.seed;
        ep.use_fallback = ! params.skip_fallback;
        auto esc = anchored_escalation(*concave.grouped, ep);
        for (auto & f : esc.findings)
            out.findings.push_back(f);
        {
            nlohmann::json rounds = nlohmann::json::array();
            for (auto & rd : esc.rounds)
                rounds.push_back({{"gamma1", rd.gamma1},
                    {"gamma2", rd.gamma2},
                    {"gamma3", rd.gamma3},
                    {"k", rd.k},
                    {"h", rd.h},
                    {"width", rd.width},
                    {"r", rd.r_parallel},
                    {"copies_e", rd.copies_e},
                    {"copies_f", rd.copies_f},
                    {"a_d", rd.a_d},
                    {"b_d", rd.b_d},
                    {"d", rd.d_size},
                    {"z", rd.z_size},
                    {"c", rd.c_size},
                    {"orders", rd.orders_tried},
                    {"m", rd.m},
                    {"type", rd.type},
                    {"u", rd.u_size},
                    {"new_width", rd.new_width},
                    {"anchored", rd.anchored_after}});
            nlohmann::json rec{{"phase", "escalation"},
                {"fingerprint", hex(concave.grouped->fingerprint())},
                {"alpha", esc.alpha},
                {"beta", esc.beta},
                {"gamma3", esc.gamma3},
                {"reversed", esc.reversed},
                {"max_gamma0", esc.max_gamma0},
                {"gamma0_bound", 3 * params.delta - 2},
                {"rounds", rounds},
                {"outcome", esc.outcome},
                {"diagnostic", esc.diagnostic},
                {"findings", esc.findings.size()}};
            if (esc.embedding)
                rec["embedding"] = embedding_json(*esc.embedding);
            record(rec);
        }
        if (esc.max_gamma0 > 3 * params.delta - 2)
            finding("escalation", "gamma0 <= 3delta-2", "reached " + std::to_string(esc.max_gamma0));
        if (! esc.embedding)
            return stop("escalation", esc.diagnostic.empty() ? "no embedding" : esc.diagnostic);

        // T(delta, eta) copy in C  ->  copy of T in B
        auto & into_t = fit->second;
        RainbowEmbedding e{"tree", {}, {}};
        for (int v = 0; v < tree.size(); ++v) {
            int host = esc.embedding->vertex[static_cast<std::size_t>(into_t[static_cast<std::size_t>(v)])];
            e.vertex.push_back(host);
            e.block_index.push_back(b.index(b.position_of_vertex(host)));
        }
        if (accept("escalation", std::move(e)))
            return stop("escalation", "rainbow copy from escalation");
        return stop("escalation", "escalation copy failed verification");
    }
}
