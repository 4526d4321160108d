// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_ENGINE_HPP
#define RAMOSAIC_ENGINE_HPP

#include "ramosaic/AbstractState.hpp"
#include "ramosaic/Frontend.hpp"
#include "ramosaic/Interference.hpp"
#include "ramosaic/Model.hpp"
#include "ramosaic/Transfer.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ramosaic {

enum class EngineMode { PerLoad, Combinations };

struct EngineConfig {
	TransferConfig transfer;
	EngineMode mode = EngineMode::PerLoad;
	bool prune = true;
	/* 0 keeps loops and analyzes them with widening */
	UnrollOptions unroll;
	std::size_t maxIterations = 1000;
	std::size_t combinationBudget = 4096;
};

struct AssertionVerdict {
	std::string name; /* the assert's label, or "final" */
	LocId loc = -1;   /* -1 for the postcondition */
	Verdict verdict = Verdict::Proved;
	/* one state for an inline assert, one exit state per thread for final */
	std::vector<std::vector<AbstractState>> witnesses;
};

struct AnalysisResult {
	std::shared_ptr<const Model> model;
	StateSet states;
	std::vector<AssertionVerdict> verdicts;
	int totalRounds = 0;
	/* rounds that changed the state set */
	int effectiveRounds = 0;
	std::set<std::string> widened;

	Verdict overall() const;
};

class Engine {
public:
	Engine(std::shared_ptr<const Model> m, EngineConfig cfg);

	/* one worklist pass over a thread against a frozen global set */
	StateSet seqAI(ThreadId t, const StateSet &global, const std::map<int, ReadChoice> &reads,
	               std::set<std::string> *widened = nullptr) const;

	/* transfer outputs of one node, before they are merged into `local` */
	std::vector<AbstractState> step(ThreadId t, int node, const StateSet &local, const StateSet &global,
	                                const std::map<int, ReadChoice> &reads) const;
	AnalysisResult tmai() const;
	AnalysisResult analyzeWithCombinations() const;
	AnalysisResult run() const;

	/* assertion verdicts over a fixpoint */
	std::vector<AssertionVerdict> checkAssertions(const StateSet &ss) const;
	AssertionVerdict checkFinal(const StateSet &ss) const;

	const Model &model() const { return *m_; }
	const InterferenceMap &interferences() const { return interfs_; }

private:
	using SeqRunner = std::function<StateSet(ThreadId, const StateSet &, std::set<std::string> *)>;
	AnalysisResult fixpoint(const SeqRunner &runThread) const;
	std::vector<AbstractState> preStates(ThreadId t, int node, const StateSet &local) const;
	bool compatible(const std::vector<const AbstractState *> &chosen, std::vector<MoPoset> &acc,
	                const AbstractState &next) const;

	std::shared_ptr<const Model> m_;
	EngineConfig cfg_;
	Transfer transfer_;
	InterferenceMap interfs_;
	FlagPolicy policy_;
};

/* unroll (unless loop mode), build the model, run the configured engine */
AnalysisResult analyze(const Program &p, const EngineConfig &cfg = {});

const char *toString(Verdict v);

} // namespace ramosaic

#endif
