// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_TESTS_POSETS_HPP
#define RAMOSAIC_TESTS_POSETS_HPP

#include "ramosaic/MoPoset.hpp"

#include <random>
#include <vector>

namespace ramosaic::testkit {

/* Stores of one variable spread over a few threads, several instances
 * per label: a.1 a.2 a.3 b.1 b.2 c.1 d.1 e.1 */
struct PosetUniverse {
	EventTable events;
	SbIndex sb;
	std::vector<EventId> all;

	/* threads own consecutive events; sb follows event ids */
	static PosetUniverse make(bool criticalOdd = false);
};

/* random subset of `pool`, random acyclic order over it */
MoPoset randomPoset(std::mt19937_64 &rng, const std::vector<EventId> &pool, double edgeProb = 0.3);

/* drops events or pairs, never adds: the result is ⊒ p */
MoPoset coarsen(std::mt19937_64 &rng, const MoPoset &p);

/* adds events from `pool` or pairs, keeping acyclicity: the result is ⊑ p */
MoPoset refineRandom(std::mt19937_64 &rng, const MoPoset &p, const std::vector<EventId> &pool);

/* every strict partial order over `ev` (transitively closed) */
std::vector<MoPoset> allPosets(const std::vector<EventId> &ev);

/* every nonempty set of linear orders over `ev` */
std::vector<LosetSet> allLosetSets(const std::vector<EventId> &ev);

std::vector<std::vector<EventId>> subsets(const std::vector<EventId> &ev);

} // namespace ramosaic::testkit

#endif
