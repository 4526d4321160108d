// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_MOPOSET_HPP
#define RAMOSAIC_MOPOSET_HPP

#include "ramosaic/Events.hpp"

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ramosaic {

enum class MoMode { Concrete, Abstract };

using EventPair = std::pair<EventId, EventId>;

/* A strict partial order over the stores of one variable. The default value
 * is ⊤ (no events); ⊥ is a separate flag. Orders are kept transitively
 * closed and sorted, so equality is structural. */
class MoPoset {
public:
	MoPoset() = default;

	static MoPoset bottom();
	/* closes the order; a cyclic input gives ⊥ */
	static MoPoset make(std::vector<EventId> events, std::vector<EventPair> order);
	static MoPoset chain(const std::vector<EventId> &seq);

	bool isBottom() const { return bottom_; }
	bool isTop() const { return !bottom_ && events_.empty(); }
	const std::vector<EventId> &events() const { return events_; }
	const std::vector<EventPair> &order() const { return order_; }

	bool contains(EventId e) const;
	bool ordered(EventId a, EventId b) const;

	/* events with no successor */
	std::vector<EventId> lasts() const;
	bool isTotal() const;

	/* internal audit: closed, irreflexive, acyclic, endpoints present */
	bool wellFormed() const;

	auto operator<=>(const MoPoset &) const = default;

private:
	bool bottom_ = false;
	std::vector<EventId> events_;
	std::vector<EventPair> order_;
};

bool less(const MoPoset &p1, const MoPoset &p2);
bool consistent(const MoPoset &p1, const MoPoset &p2, MoMode mode, const SbIndex &sb);
bool validExtension(const MoPoset &p, EventId st, MoMode mode, const SbIndex &sb);
MoPoset append(const MoPoset &p, EventId st, MoMode mode, const SbIndex &sb);
MoPoset meet(const MoPoset &p1, const MoPoset &p2, MoMode mode, const SbIndex &sb);
MoPoset join(const MoPoset &p1, const MoPoset &p2);
MoPoset widen(const MoPoset &p1, const MoPoset &p2, const EventTable &events);

/* forget every event with a later same-thread store in the poset */
MoPoset absAlpha(const MoPoset &p, const SbIndex &sb);
bool betaRelated(const MoPoset &p1, const MoPoset &p2, const SbIndex &sb);

/*** Bridge to sets of total orders ***/

using Loset = std::vector<EventId>;

/* An element of the concrete domain: every loset covers `events`. An empty
 * loset set is the bottom element. */
struct LosetSet {
	std::vector<EventId> events;
	std::set<Loset> losets;

	bool isBottom() const { return losets.empty(); }
	bool operator==(const LosetSet &) const = default;
};

LosetSet losetTop();
MoPoset alphaFromLosets(const LosetSet &t);
/* all linearizations; throws TooLarge beyond `guard` events */
LosetSet gammaToLosets(const MoPoset &p, std::size_t guard = 8);
bool losetLeq(const LosetSet &t1, const LosetSet &t2);

std::string toString(const MoPoset &p, const EventTable &events);

} // namespace ramosaic

#endif
