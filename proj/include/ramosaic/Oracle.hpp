// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_ORACLE_HPP
#define RAMOSAIC_ORACLE_HPP

#include "ramosaic/Engine.hpp"
#include "ramosaic/Model.hpp"
#include "ramosaic/MoPoset.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ramosaic {

struct OracleOptions {
	/* shared-memory instructions across all threads */
	std::size_t guard = 18;
};

/* A write message; init writes have thread -1 and node = variable */
struct OracleWrite {
	ThreadId thread = -1;
	int node = 0;
	VarId var = 0;
	std::int64_t value = 0;
	bool rmw = false;
	EventId event = -1;
};

/* One executed shared-memory instruction of a thread */
struct OracleOp {
	int node = 0;
	int write = -1;  /* write it produced */
	int source = -1; /* write it read */
	std::int64_t value = 0; /* value read */
};

/* A complete RA-consistent execution */
struct Execution {
	std::vector<OracleWrite> writes;
	std::vector<std::vector<int>> mo; /* per variable, init first */
	std::vector<std::vector<OracleOp>> threads;
	std::vector<std::int64_t> regs; /* final value per memory slot */
};

struct OracleResult {
	std::vector<Execution> executions;
	/* final valuations, registers in slot order */
	std::set<std::vector<std::int64_t>> outcomes;
	/* thread registers (in ThreadModel::regs order) after each location */
	std::map<LocId, std::set<std::vector<std::int64_t>>> snapshots;
	std::set<LocId> assertViolations;
	bool finalViolated = false;
	std::size_t statesExplored = 0;
};

/* throws TooLarge beyond the guard or when the model has loops */
OracleResult enumerate(const Model &m, const OracleOptions &opts = {});

/* empty when the execution satisfies the RA axioms, else the broken one */
std::string validate(const Model &m, const Execution &x);

/* mo losets of one variable, grouped by the set of writes executed */
std::vector<LosetSet> losetsOf(const OracleResult &r, VarId var);

struct SoundnessReport {
	std::vector<std::string> problems;
	bool ok() const { return problems.empty(); }
};

/* violations, register coverage, and per-variable poset coverage */
SoundnessReport checkSoundness(const OracleResult &oracle, const AnalysisResult &result);

/* `r1=0 r2=1` per outcome, sorted */
std::vector<std::string> formatOutcomes(const Model &m, const OracleResult &r);

} // namespace ramosaic

#endif
