#pragma once

#include "purepair/blockade.hpp"
#include "purepair/fraction.hpp"
#include "purepair/verdict.hpp"

#include <optional>
#include <string>

namespace purepair
{
    /// Vertices of block `position` with a neighbour in X.
    auto covered_count(const Blockade & b, const VertexSet & x, int position) -> int;

    /// At least ceil(lambda * width) vertices of the block have a neighbour in X. X must avoid the block.
    auto lambda_cover(const Blockade & b, const VertexSet & x, int index, const Fraction & lambda) -> bool;
    /// At least ceil(lambda * width) vertices of the block have no neighbour in X. X must avoid the block.
    auto lambda_miss(const Blockade & b, const VertexSet & x, int index, const Fraction & lambda) -> bool;

    struct ConcavityWitness
    {
        int h1, h2, h3;
        VertexSet x;
    };

    struct ConcavityVerdict
    {
        /// holds means concave.
        Verdict verdict = Verdict::holds;
        std::optional<ConcavityWitness> witness;
        std::uint64_t checked = 0;
        std::string note;
    };

    /**
     * lambda-concavity of an equicardinal blockade.
     *
     * Exhaustive mode searches, per triple, the subsets of the vertices that
     * see both the middle block and an outer block; vertices seeing no outer
     * block are always added and vertices missing the middle block never
     * help. The budget bounds the number of search nodes.
     *
     * Sampled mode tries structured candidates (free vertices, greedy growth,
     * single blocks, unions of two blocks, neighbourhood slices, random
     * subsets) and reports refuted or unverified.
     */
    auto is_concave(const Blockade & b, const Fraction & lambda, const VerifyOptions & opts = {}) -> ConcavityVerdict;

    /// Independent check of a concavity witness.
    auto check_concavity_witness(const Blockade & b, const Fraction & lambda, const ConcavityWitness & w) -> bool;
}
