// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_MODEL_HPP
#define RAMOSAIC_MODEL_HPP

#include "ramosaic/Events.hpp"
#include "ramosaic/Interval.hpp"
#include "ramosaic/MoPoset.hpp"
#include "ramosaic/Program.hpp"

#include <map>
#include <string>
#include <vector>

namespace ramosaic {

using LocId = int;

struct TransferConfig {
	MoMode mode = MoMode::Abstract;
	bool rmwCritical = true;
	int wideningThreshold = 3;
};

/* A shared variable or a mutex; each owns one poset */
struct PosetVar {
	std::string name;
	bool isMutex = false;
	std::int64_t init = 0;
	int slot = -1; /* memory slot, shared variables only */
	/* every write is an rmw (or the var is a mutex), so its writes form
	 * one hb-ordered chain */
	bool chain = false;
};

struct NodeInfo {
	VarId var = -1;
	int reg = -1;
	EventId event = -1; /* -1 for non-writes and for writes inside loops */
	bool summary = false;
	LocId loc = -1;
	LocId failLoc = -1; /* cas only */
	std::vector<int> matchingLocks;   /* unlock: nearest preceding locks */
	std::vector<int> matchingUnlocks; /* lock: nearest following unlocks */
};

struct ThreadModel {
	std::string name;
	Cfg cfg; /* expressions resolved to slots */
	std::vector<NodeInfo> info;
	std::vector<int> regs; /* slots owned by this thread */
};

struct Location {
	ThreadId thread = 0;
	int node = 0;
	bool failure = false;
	std::string name;
};

/* An unrolled, resolved program ready for analysis and enumeration */
class Model {
public:
	static Model build(const Program &p, const TransferConfig &cfg = {});

	const Program &program() const { return program_; }
	const std::vector<PosetVar> &vars() const { return vars_; }
	const std::vector<ThreadModel> &threads() const { return threads_; }
	const EventTable &events() const { return events_; }
	const SbIndex &sb() const { return sb_; }
	const std::vector<Location> &locations() const { return locations_; }
	const std::vector<std::string> &slotNames() const { return slotNames_; }
	const std::vector<int> &slotOwner() const { return slotOwner_; }
	const Memory &initialMemory() const { return initial_; }
	const BoolExpr &postcondition() const { return postcondition_; }
	const TransferConfig &config() const { return config_; }
	bool loopMode() const { return loopMode_; }

	const CfgNode &node(ThreadId t, int n) const { return threads_[t].cfg.nodes[n]; }
	const NodeInfo &info(ThreadId t, int n) const { return threads_[t].info[n]; }
	/* location of an event's producing node (the success side for cas) */
	LocId eventLoc(EventId e) const { return eventLoc_[e]; }
	int eventNode(EventId e) const { return eventNode_[e]; }

	/* reflexive CFG reachability within thread t */
	bool mayReach(ThreadId t, int a, int b) const;

	/* throws UnknownLabel */
	LocId locationOf(const Label &l) const;
	std::optional<std::pair<ThreadId, int>> findNode(const Label &l) const;

	/* posets whose flag means "event set equals the visible set" */
	bool exactSetVar(VarId v) const { return config_.rmwCritical && vars_[v].chain; }

	/* shared-memory instructions counted by the enumeration guard */
	std::size_t sharedEventCount() const;

private:
	Program program_;
	TransferConfig config_;
	std::vector<PosetVar> vars_;
	std::vector<ThreadModel> threads_;
	EventTable events_;
	SbIndex sb_;
	std::vector<Location> locations_;
	std::vector<BitMatrix> reach_;
	std::vector<LocId> eventLoc_;
	std::vector<int> eventNode_;
	std::map<Label, LocId> labelLoc_;
	std::vector<std::string> slotNames_;
	std::vector<int> slotOwner_;
	Memory initial_;
	BoolExpr postcondition_;
	bool loopMode_ = false;
};

} // namespace ramosaic

#endif
