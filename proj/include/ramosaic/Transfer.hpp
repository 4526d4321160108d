// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_TRANSFER_HPP
#define RAMOSAIC_TRANSFER_HPP

#include "ramosaic/AbstractState.hpp"
#include "ramosaic/Model.hpp"

#include <optional>
#include <vector>

namespace ramosaic {

/* A write another thread may read from: states at `loc`, publishing
 * `event` (-1 for a write inside a loop) */
struct Source {
	LocId loc = -1;
	EventId event = -1;
	auto operator<=>(const Source &) const = default;
};

/* What a load may read: its own view (ctx) and/or other threads' writes */
struct ReadChoice {
	bool ctx = true;
	std::vector<Source> sources;
};

struct RmwResult {
	std::vector<AbstractState> success;
	std::vector<AbstractState> failure;
};

enum class Verdict { Proved, PossiblyViolated };

struct AssertResult {
	Verdict verdict = Verdict::Proved;
	std::vector<AbstractState> witnesses;
};

/* Transfer functions over one model. All members are const; the states
 * they read from `global` are never modified. */
class Transfer {
public:
	explicit Transfer(const Model &m);

	const Model &model() const { return m_; }

	AbstractState entryState(ThreadId t) const;

	/* target reads `readVar` from the write `sourceEvent` whose post-state
	 * is `source`; nullopt when the combination is inconsistent */
	std::optional<AbstractState> applyInterference(const AbstractState &target, const AbstractState &source,
	                                               VarId readVar, EventId sourceEvent) const;

	std::vector<AbstractState> store(ThreadId t, int node, const std::vector<AbstractState> &pre) const;
	std::vector<AbstractState> load(ThreadId t, int node, const std::vector<AbstractState> &pre,
	                                const ReadChoice &choice, const StateSet &global) const;
	RmwResult rmw(ThreadId t, int node, const std::vector<AbstractState> &pre, const ReadChoice &choice,
	              const StateSet &global) const;
	std::vector<AbstractState> lock(ThreadId t, int node, const std::vector<AbstractState> &pre,
	                                const ReadChoice &unlocks, const StateSet &global) const;
	std::vector<AbstractState> unlock(ThreadId t, int node, const std::vector<AbstractState> &pre) const;
	std::vector<AbstractState> assume(ThreadId t, int node, const std::vector<AbstractState> &pre) const;
	std::vector<AbstractState> assign(ThreadId t, int node, const std::vector<AbstractState> &pre) const;

	/* relocates states to a node's location, used for entry, exit, assert */
	std::vector<AbstractState> pass(ThreadId t, int node, const std::vector<AbstractState> &pre) const;

private:
	struct Read {
		AbstractState state;
		Interval value;
	};
	std::vector<Read> reads(const std::vector<AbstractState> &pre, VarId var, const ReadChoice &choice,
	                        const StateSet &global) const;
	std::optional<AbstractState> appendEvent(AbstractState s, VarId var, EventId e) const;
	bool covered(const MoPoset &p, const MoPoset &q) const;

	const Model &m_;
};

/* Proved iff no state survives refinement by the negated condition */
AssertResult checkAssert(const std::vector<AbstractState> &states, const BoolExpr &cond);

} // namespace ramosaic

#endif
