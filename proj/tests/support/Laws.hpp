// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_TESTS_LAWS_HPP
#define RAMOSAIC_TESTS_LAWS_HPP

#include "ramosaic/Engine.hpp"
#include "ramosaic/Model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ramosaic::testkit {

/* Each check returns the broken cases, empty when all hold */

/* ⊑ order laws, ⊔/⊓ as lub/glb, ∇ upper bound and chain length */
std::vector<std::string> latticeLaws(std::uint64_t seed, int cases);

/* α/γ monotonicity and the adjunction: exhaustive up to three events,
 * every poset against sampled loset sets at four */
std::vector<std::string> galoisLaws(std::uint64_t seed, int samples4);

/* betaRelated(p, absAlpha p) and minimality against sampled β-abstractions */
std::vector<std::string> alphaSharpLaws(std::uint64_t seed, int cases);

struct FuzzSummary {
	int programs = 0;
	int skipped = 0; /* combination budget exceeded */
	int oracleViolations = 0;
	int falsePositives = 0;
	std::vector<std::string> problems;
};

/* random programs checked against the enumerating oracle */
FuzzSummary fuzzSoundness(std::uint64_t seed, int programs, const EngineConfig &cfg = {});

/* rf choices of every oracle execution survive feasibility pruning */
std::vector<std::string> pruningKeepsRealizable(const Model &m);

} // namespace ramosaic::testkit

#endif
