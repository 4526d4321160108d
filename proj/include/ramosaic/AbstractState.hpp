// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_ABSTRACTSTATE_HPP
#define RAMOSAIC_ABSTRACTSTATE_HPP

#include "ramosaic/Interval.hpp"
#include "ramosaic/Model.hpp"
#include "ramosaic/MoPoset.hpp"

#include <compare>
#include <string>
#include <vector>

namespace ramosaic {

/* One poset per shared variable and mutex, one interval per memory slot.
 * exact[v] records that the latest visible write of v is one of mo[v]'s
 * events (the initial write when mo[v] is empty); for chain variables
 * under rmw-critical mode it records that mo[v] holds every visible
 * write. */
struct AbstractState {
	LocId at = -1;
	std::vector<MoPoset> mo;
	Memory mem;
	std::vector<char> exact;

	bool hasBottom() const;
	auto operator<=>(const AbstractState &) const = default;
};

/* Which posets carry the event-set meaning of the exact flag */
struct FlagPolicy {
	std::vector<char> exactSet;

	static FlagPolicy of(const Model &m);
};

/* Per-location state sets in ⊎-normal form: no two states at one location
 * share a poset map or a memory. Sets are kept sorted. */
class StateSet {
public:
	explicit StateSet(std::size_t locations = 0) : sets_(locations) {}

	std::size_t locations() const { return sets_.size(); }
	const std::vector<AbstractState> &at(LocId l) const { return sets_[l]; }
	std::size_t totalStates() const;

	/* ⊎; returns whether the set at s.at changed. States with a ⊥ poset are
	 * dropped. */
	bool merge(AbstractState s, const FlagPolicy &policy = {});

	/* collapses the location to a single widened state */
	bool widenInto(AbstractState s, const EventTable &events);

	bool operator==(const StateSet &o) const = default;

private:
	std::vector<std::vector<AbstractState>> sets_;
};

/* free-function spellings */
StateSet mergeInto(StateSet ss, AbstractState s, const FlagPolicy &policy = {});
const std::vector<AbstractState> &statesAt(const StateSet &ss, LocId l);
bool equalSets(const StateSet &a, const StateSet &b);

/* `ℓ | x:{...} | x:[lo,hi] r1:[lo,hi]`; only the owning thread's registers */
std::string dumpState(const AbstractState &s, const Model &m);

} // namespace ramosaic

#endif
