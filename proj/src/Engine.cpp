// SPDX-License-Identifier: MIT

#include "ramosaic/Engine.hpp"
#include "ramosaic/Error.hpp"

#include <algorithm>

namespace ramosaic {

Verdict AnalysisResult::overall() const
{
	for (const auto &v : verdicts)
		if (v.verdict == Verdict::PossiblyViolated)
			return Verdict::PossiblyViolated;
	return Verdict::Proved;
}

const char *toString(Verdict v)
{
	return v == Verdict::Proved ? "proved" : "violated";
}

Engine::Engine(std::shared_ptr<const Model> m, EngineConfig cfg)
	: m_(std::move(m)), cfg_(std::move(cfg)), transfer_(*m_), interfs_(getInterfs(*m_)), policy_(FlagPolicy::of(*m_))
{
}

std::vector<AbstractState> Engine::preStates(ThreadId t, int node, const StateSet &local) const
{
	std::vector<AbstractState> pre;
	for (auto p : m_->node(t, node).preds) {
		const auto &info = m_->info(t, p);
		const auto &a = local.at(info.loc);
		pre.insert(pre.end(), a.begin(), a.end());
		if (info.failLoc >= 0) {
			const auto &f = local.at(info.failLoc);
			pre.insert(pre.end(), f.begin(), f.end());
		}
	}
	return pre;
}

std::vector<AbstractState> Engine::step(ThreadId t, int n, const StateSet &local, const StateSet &global,
                                        const std::map<int, ReadChoice> &reads) const
{
	const auto &node = m_->node(t, n);
	std::vector<AbstractState> pre;
	if (n == m_->threads()[t].cfg.entry)
		pre.push_back(transfer_.entryState(t));
	else
		pre = preStates(t, n, local);

	std::vector<AbstractState> out;
	if (node.kind != NodeKind::Op) {
		out = transfer_.pass(t, n, pre);
	} else {
		switch (node.instr.kind) {
		case OpKind::Store: out = transfer_.store(t, n, pre); break;
		case OpKind::Load: out = transfer_.load(t, n, pre, reads.at(n), global); break;
		case OpKind::Cas:
		case OpKind::FetchAdd: {
			auto r = transfer_.rmw(t, n, pre, reads.at(n), global);
			out = std::move(r.success);
			out.insert(out.end(), r.failure.begin(), r.failure.end());
			break;
		}
		case OpKind::Lock: out = transfer_.lock(t, n, pre, reads.at(n), global); break;
		case OpKind::Unlock: out = transfer_.unlock(t, n, pre); break;
		case OpKind::Assign: out = transfer_.assign(t, n, pre); break;
		case OpKind::Assume: out = transfer_.assume(t, n, pre); break;
		case OpKind::Assert: out = transfer_.pass(t, n, pre); break;
		}
	}
	return out;
}

StateSet Engine::seqAI(ThreadId t, const StateSet &global, const std::map<int, ReadChoice> &reads,
                       std::set<std::string> *widened) const
{
	const auto &cfg = m_->threads()[t].cfg;
	StateSet local(m_->locations().size());
	std::vector<int> visits(cfg.nodes.size(), 0);
	bool loops = m_->loopMode();
	const std::size_t maxPasses = 10000;

	for (std::size_t pass = 0;; ++pass) {
		if (pass == maxPasses)
			throw Divergence("thread " + m_->threads()[t].name + " does not stabilize");
		bool changed = false;
		for (auto n : cfg.rpo) {
			const auto &node = cfg.nodes[n];
			auto out = step(t, n, local, global, reads);

			bool widen = loops && node.loopHeader && ++visits[n] > cfg_.transfer.wideningThreshold;
			for (auto &s : out) {
				if (widen) {
					auto name = m_->locations()[s.at].name;
					if (local.widenInto(std::move(s), m_->events())) {
						changed = true;
						if (widened)
							widened->insert(name);
					}
				} else if (local.merge(std::move(s), policy_)) {
					changed = true;
				}
			}
		}
		if (!loops || !changed)
			break;
	}
	return local;
}

AnalysisResult Engine::fixpoint(const SeqRunner &runThread) const
{
	AnalysisResult res;
	res.model = m_;
	StateSet current(m_->locations().size());
	bool loops = m_->loopMode();
	for (int round = 1;; ++round) {
		if (static_cast<std::size_t>(round) > cfg_.maxIterations)
			throw Divergence("no fixpoint after " + std::to_string(cfg_.maxIterations) + " rounds");
		StateSet next = current;
		bool widenRound = loops && round > cfg_.transfer.wideningThreshold;
		for (std::size_t t = 0; t < m_->threads().size(); ++t) {
			auto local = runThread(static_cast<ThreadId>(t), current, &res.widened);
			for (LocId l = 0; l < static_cast<LocId>(local.locations()); ++l) {
				for (const auto &s : local.at(l)) {
					if (widenRound) {
						if (next.widenInto(s, m_->events()))
							res.widened.insert(m_->locations()[l].name);
					} else {
						next.merge(s, policy_);
					}
				}
			}
		}
		res.totalRounds = round;
		if (next == current)
			break;
		res.effectiveRounds = round;
		current = std::move(next);
	}
	res.states = std::move(current);
	res.verdicts = checkAssertions(res.states);
	return res;
}

AnalysisResult Engine::tmai() const
{
	return fixpoint([this](ThreadId t, const StateSet &global, std::set<std::string> *w) {
		return seqAI(t, global, interfs_.threads[t], w);
	});
}

AnalysisResult Engine::analyzeWithCombinations() const
{
	auto combos = feasibleCombinations(*m_, cfg_.prune, cfg_.combinationBudget);
	std::vector<std::vector<std::map<int, ReadChoice>>> reads(combos.size());
	for (std::size_t t = 0; t < combos.size(); ++t)
		for (const auto &ic : combos[t])
			reads[t].push_back(restrictTo(interfs_, ic));
	return fixpoint([this, &reads](ThreadId t, const StateSet &global, std::set<std::string> *w) {
		StateSet acc(m_->locations().size());
		for (const auto &r : reads[t]) {
			auto local = seqAI(t, global, r, w);
			for (LocId l = 0; l < static_cast<LocId>(local.locations()); ++l)
				for (const auto &s : local.at(l))
					acc.merge(s, policy_);
		}
		return acc;
	});
}

AnalysisResult Engine::run() const
{
	return cfg_.mode == EngineMode::Combinations ? analyzeWithCombinations() : tmai();
}

std::vector<AssertionVerdict> Engine::checkAssertions(const StateSet &ss) const
{
	std::vector<AssertionVerdict> out;
	for (std::size_t t = 0; t < m_->threads().size(); ++t) {
		const auto &cfg = m_->threads()[t].cfg;
		for (std::size_t n = 0; n < cfg.nodes.size(); ++n) {
			const auto &node = cfg.nodes[n];
			if (node.kind != NodeKind::Op || node.instr.kind != OpKind::Assert)
				continue;
			AssertionVerdict v;
			v.loc = m_->info(static_cast<ThreadId>(t), static_cast<int>(n)).loc;
			v.name = m_->locations()[v.loc].name;
			auto r = checkAssert(ss.at(v.loc), node.instr.cond);
			v.verdict = r.verdict;
			for (auto &w : r.witnesses)
				v.witnesses.push_back({std::move(w)});
			out.push_back(std::move(v));
		}
	}
	if (m_->postcondition())
		out.push_back(checkFinal(ss));
	return out;
}

bool Engine::compatible(const std::vector<const AbstractState *> &chosen, std::vector<MoPoset> &acc,
                        const AbstractState &next) const
{
	auto mode = m_->config().mode;
	for (std::size_t v = 0; v < acc.size(); ++v) {
		acc[v] = meet(acc[v], next.mo[v], mode, m_->sb());
		if (acc[v].isBottom())
			return false;
		if (!m_->exactSetVar(static_cast<VarId>(v)) || !next.exact[v])
			continue;
		const auto &ne = next.mo[v].events();
		for (const auto *c : chosen) {
			if (!c->exact[v])
				continue;
			const auto &ce = c->mo[v].events();
			if (!std::includes(ne.begin(), ne.end(), ce.begin(), ce.end()) &&
			    !std::includes(ce.begin(), ce.end(), ne.begin(), ne.end()))
				return false;
		}
	}
	return true;
}

AssertionVerdict Engine::checkFinal(const StateSet &ss) const
{
	AssertionVerdict v;
	v.name = "final";
	auto negated = makeNot(m_->postcondition());
	auto nthreads = m_->threads().size();

	Memory base = m_->initialMemory();
	for (std::size_t s = 0; s < m_->slotOwner().size(); ++s)
		if (m_->slotOwner()[s] >= 0)
			base.set(s, Interval::top());

	std::vector<const AbstractState *> chosen;
	std::function<void(std::size_t, std::vector<MoPoset>, Memory)> dfs = [&](std::size_t t, std::vector<MoPoset> acc,
	                                                                         Memory mem) {
		if (!refine(mem, negated))
			return;
		if (t == nthreads) {
			std::vector<AbstractState> w;
			for (const auto *c : chosen)
				w.push_back(*c);
			v.witnesses.push_back(std::move(w));
			return;
		}
		auto exitLoc = m_->info(static_cast<ThreadId>(t), m_->threads()[t].cfg.exit).loc;
		for (const auto &s : ss.at(exitLoc)) {
			auto nextAcc = acc;
			if (!compatible(chosen, nextAcc, s))
				continue;
			Memory nextMem = mem;
			for (auto r : m_->threads()[t].regs)
				nextMem.set(r, s.mem[r]);
			chosen.push_back(&s);
			dfs(t + 1, std::move(nextAcc), std::move(nextMem));
			chosen.pop_back();
		}
	};
	dfs(0, std::vector<MoPoset>(m_->vars().size()), base);
	if (!v.witnesses.empty())
		v.verdict = Verdict::PossiblyViolated;
	return v;
}

AnalysisResult analyze(const Program &p, const EngineConfig &cfg)
{
	Program q = p;
	if (cfg.unroll.bound > 0 && hasLoops(p))
		q = unroll(p, cfg.unroll);
	auto model = std::make_shared<const Model>(Model::build(q, cfg.transfer));
	Engine e(model, cfg);
	return e.run();
}

} // namespace ramosaic
