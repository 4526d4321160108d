// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_INTERFERENCE_HPP
#define RAMOSAIC_INTERFERENCE_HPP

#include "ramosaic/Events.hpp"
#include "ramosaic/Model.hpp"
#include "ramosaic/Transfer.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ramosaic {

/* Per thread: every load, rmw and lock node mapped to what it may read */
struct InterferenceMap {
	std::vector<std::map<int, ReadChoice>> threads;

	const ReadChoice &at(ThreadId t, int node) const { return threads[t].at(node); }
};

InterferenceMap getInterfs(const Model &m);

/* A program point: a node of a thread, or the implicit init and final blocks */
struct Point {
	static constexpr ThreadId Init = -1;
	static constexpr ThreadId Final = -2;
	ThreadId thread = Init;
	int node = 0;
};

/* Reflexive-transitive closure of program order, init before every thread,
 * every thread before final */
class PpoRelation {
public:
	PpoRelation() = default;
	explicit PpoRelation(const Model &m);

	bool ppo(Point a, Point b) const;

	/* internal audit */
	bool reflexive() const;
	bool transitive() const;

private:
	std::size_t index(Point p) const;

	std::vector<std::size_t> offset_;
	std::size_t size_ = 2;
	BitMatrix rel_{2};
};

PpoRelation ppoClosure(const Model &m);

/* one choice per load/rmw node of a thread; nullopt is ctx */
struct InterferenceCombination {
	ThreadId thread = 0;
	std::vector<std::pair<int, std::optional<Source>>> choices;

	auto operator<=>(const InterferenceCombination &) const = default;
};

/* false iff some pair of choices is derivably not-reads-from */
bool isFeasible(const Model &m, const InterferenceCombination &ic, const PpoRelation &ppo);

/* cartesian product per thread, filtered by isFeasible when `prune`;
 * throws CombinationBudgetExceeded beyond `budget` per thread */
std::vector<std::vector<InterferenceCombination>> feasibleCombinations(const Model &m, bool prune = true,
                                                                       std::size_t budget = 4096);

/* the per-load read choices one combination allows */
std::map<int, ReadChoice> restrictTo(const InterferenceMap &im, const InterferenceCombination &ic);

} // namespace ramosaic

#endif
