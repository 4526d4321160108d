// SPDX-License-Identifier: MIT

#include "ramosaic/Model.hpp"
#include "ramosaic/Error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ramosaic {

namespace {

EventKind eventKindOf(OpKind k)
{
	switch (k) {
	case OpKind::Cas:
	case OpKind::FetchAdd: return EventKind::Rmw;
	case OpKind::Lock: return EventKind::Lock;
	case OpKind::Unlock: return EventKind::Unlock;
	default: return EventKind::Store;
	}
}

bool isWrite(OpKind k)
{
	return k == OpKind::Store || k == OpKind::Cas || k == OpKind::FetchAdd || k == OpKind::Lock ||
	       k == OpKind::Unlock;
}

BitMatrix reachability(const Cfg &cfg)
{
	BitMatrix r(cfg.nodes.size());
	for (std::size_t n = 0; n < cfg.nodes.size(); ++n)
		for (auto s : cfg.nodes[n].succs)
			r.set(n, s);
	r.transitiveClose();
	return r;
}

/* dom.get(a, b): a dominates b (reflexive) */
BitMatrix dominators(const Cfg &cfg)
{
	auto n = cfg.nodes.size();
	/* row b holds the dominators of b while iterating */
	std::vector<std::vector<char>> dom(n, std::vector<char>(n, 1));
	dom[cfg.entry].assign(n, 0);
	dom[cfg.entry][cfg.entry] = 1;
	bool changed = true;
	while (changed) {
		changed = false;
		for (auto b : cfg.rpo) {
			if (b == cfg.entry)
				continue;
			std::vector<char> next(n, 1);
			for (auto p : cfg.nodes[b].preds)
				for (std::size_t k = 0; k < n; ++k)
					next[k] = next[k] && dom[p][k];
			next[b] = 1;
			if (next != dom[b]) {
				dom[b] = std::move(next);
				changed = true;
			}
		}
	}
	BitMatrix out(n);
	for (std::size_t b = 0; b < n; ++b)
		for (std::size_t a = 0; a < n; ++a)
			if (dom[b][a])
				out.set(a, b);
	return out;
}

std::vector<int> searchMatching(const Cfg &cfg, int start, OpKind want, const std::string &mutex, bool forward)
{
	std::vector<int> found;
	std::vector<char> seen(cfg.nodes.size(), 0);
	std::vector<int> stack{start};
	seen[start] = 1;
	while (!stack.empty()) {
		auto n = stack.back();
		stack.pop_back();
		const auto &next = forward ? cfg.nodes[n].succs : cfg.nodes[n].preds;
		for (auto m : next) {
			if (seen[m])
				continue;
			seen[m] = 1;
			const auto &i = cfg.nodes[m].instr;
			if (cfg.nodes[m].kind == NodeKind::Op && i.kind == want && i.target == mutex) {
				found.push_back(m);
				continue;
			}
			stack.push_back(m);
		}
	}
	std::sort(found.begin(), found.end());
	return found;
}

} // namespace

Model Model::build(const Program &p, const TransferConfig &cfg)
{
	Model m;
	m.program_ = p;
	m.config_ = cfg;
	m.loopMode_ = hasLoops(p);

	std::map<std::string, VarId> varIndex;
	for (const auto &v : p.vars) {
		PosetVar pv;
		pv.name = v.name;
		pv.init = v.init;
		pv.slot = static_cast<int>(m.slotNames_.size());
		varIndex[v.name] = static_cast<VarId>(m.vars_.size());
		m.vars_.push_back(pv);
		m.slotNames_.push_back(v.name);
		m.slotOwner_.push_back(-1);
	}
	for (const auto &mu : p.mutexes) {
		PosetVar pv;
		pv.name = mu;
		pv.isMutex = true;
		pv.chain = true;
		varIndex[mu] = static_cast<VarId>(m.vars_.size());
		m.vars_.push_back(pv);
	}

	std::map<std::string, int> slotIndex;
	for (std::size_t s = 0; s < m.slotNames_.size(); ++s)
		slotIndex[m.slotNames_[s]] = static_cast<int>(s);
	std::set<std::string> plainStored;
	for (std::size_t t = 0; t < p.threads.size(); ++t) {
		forEachInstruction(p.threads[t].body, [&](const Instruction &i) {
			if (i.kind == OpKind::Store)
				plainStored.insert(i.target);
			if (!i.reg.empty() && !slotIndex.count(i.reg)) {
				slotIndex[i.reg] = static_cast<int>(m.slotNames_.size());
				m.slotNames_.push_back(i.reg);
				m.slotOwner_.push_back(static_cast<int>(t));
			}
		});
	}
	for (auto &v : m.vars_)
		if (!v.isMutex)
			v.chain = !plainStored.count(v.name);

	auto slotOf = [&](const std::string &n) {
		auto it = slotIndex.find(n);
		if (it == slotIndex.end())
			throw SemanticError("undeclared register '" + n + "'");
		return it->second;
	};

	for (std::size_t t = 0; t < p.threads.size(); ++t) {
		ThreadModel tm;
		tm.name = p.threads[t].name;
		tm.cfg = buildCfg(p.threads[t]);
		tm.info.resize(tm.cfg.nodes.size());
		for (std::size_t s = 0; s < m.slotOwner_.size(); ++s)
			if (m.slotOwner_[s] == static_cast<int>(t))
				tm.regs.push_back(static_cast<int>(s));
		for (std::size_t n = 0; n < tm.cfg.nodes.size(); ++n) {
			auto &node = tm.cfg.nodes[n];
			auto &i = node.instr;
			if (i.value)
				i.value = resolve(i.value, slotOf);
			if (i.expected)
				i.expected = resolve(i.expected, slotOf);
			if (i.cond)
				i.cond = resolve(i.cond, slotOf);
			auto &info = tm.info[n];
			if (node.kind != NodeKind::Op)
				continue;
			if (!i.reg.empty())
				info.reg = slotOf(i.reg);
			if (isSharedAccess(i.kind))
				info.var = varIndex.at(i.target);
			if (isWrite(i.kind)) {
				if (node.inLoop) {
					info.summary = true;
				} else {
					Event e;
					e.label = i.label;
					e.thread = static_cast<ThreadId>(t);
					e.kind = eventKindOf(i.kind);
					e.var = info.var;
					info.event = m.events_.add(e);
				}
			}
			if (i.kind == OpKind::Unlock) {
				info.matchingLocks = searchMatching(tm.cfg, static_cast<int>(n), OpKind::Lock, i.target, false);
				if (info.matchingLocks.empty())
					throw AnalysisError("unlock '" + i.label.str() + "' has no matching lock");
			}
			if (i.kind == OpKind::Lock)
				info.matchingUnlocks = searchMatching(tm.cfg, static_cast<int>(n), OpKind::Unlock, i.target, true);
		}
		m.threads_.push_back(std::move(tm));
	}

	m.eventLoc_.assign(m.events_.size(), -1);
	m.eventNode_.assign(m.events_.size(), -1);
	for (std::size_t t = 0; t < m.threads_.size(); ++t) {
		auto &tm = m.threads_[t];
		for (std::size_t n = 0; n < tm.cfg.nodes.size(); ++n) {
			auto &info = tm.info[n];
			const auto &label = tm.cfg.nodes[n].instr.label;
			info.loc = static_cast<LocId>(m.locations_.size());
			m.locations_.push_back(Location{static_cast<ThreadId>(t), static_cast<int>(n), false, label.str()});
			m.labelLoc_[label] = info.loc;
			if (tm.cfg.nodes[n].kind == NodeKind::Op && tm.cfg.nodes[n].instr.kind == OpKind::Cas) {
				info.failLoc = static_cast<LocId>(m.locations_.size());
				m.locations_.push_back(
					Location{static_cast<ThreadId>(t), static_cast<int>(n), true, label.str() + "!fail"});
			}
			if (info.event >= 0) {
				m.eventLoc_[info.event] = info.loc;
				m.eventNode_[info.event] = static_cast<int>(n);
			}
		}
	}

	m.sb_ = SbIndex(m.events_.size());
	for (std::size_t t = 0; t < m.threads_.size(); ++t) {
		const auto &tm = m.threads_[t];
		auto reach = reachability(tm.cfg);
		m.reach_.push_back(reach);
		auto dom = dominators(tm.cfg);
		for (std::size_t a = 0; a < m.events_.size(); ++a) {
			if (m.events_[a].thread != static_cast<ThreadId>(t))
				continue;
			for (std::size_t b = 0; b < m.events_.size(); ++b) {
				if (a == b || m.events_[b].thread != m.events_[a].thread || m.events_[b].var != m.events_[a].var)
					continue;
				auto na = m.eventNode_[a], nb = m.eventNode_[b];
				if (reach.get(na, nb))
					m.sb_.addPrecedes(static_cast<EventId>(a), static_cast<EventId>(b));
				if (dom.get(na, nb))
					m.sb_.addDominates(static_cast<EventId>(a), static_cast<EventId>(b));
			}
		}
	}
	if (cfg.rmwCritical)
		for (std::size_t e = 0; e < m.events_.size(); ++e)
			if (m.events_[e].kind != EventKind::Store)
				m.sb_.setCritical(static_cast<EventId>(e));

	std::vector<Interval> vals(m.slotNames_.size(), Interval::constant(0));
	for (const auto &v : m.vars_)
		if (!v.isMutex)
			vals[v.slot] = Interval::constant(v.init);
	m.initial_ = Memory(std::move(vals));
	if (p.postcondition)
		m.postcondition_ = resolve(p.postcondition, slotOf);
	return m;
}

bool Model::mayReach(ThreadId t, int a, int b) const
{
	return a == b || reach_[t].get(a, b);
}

LocId Model::locationOf(const Label &l) const
{
	auto it = labelLoc_.find(l);
	if (it == labelLoc_.end())
		throw UnknownLabel("unknown label '" + l.str() + "'");
	return it->second;
}

std::optional<std::pair<ThreadId, int>> Model::findNode(const Label &l) const
{
	auto it = labelLoc_.find(l);
	if (it == labelLoc_.end())
		return std::nullopt;
	const auto &loc = locations_[it->second];
	return std::make_pair(loc.thread, loc.node);
}

std::size_t Model::sharedEventCount() const
{
	std::size_t n = 0;
	for (const auto &t : threads_)
		for (const auto &node : t.cfg.nodes)
			if (node.kind == NodeKind::Op && isSharedAccess(node.instr.kind))
				++n;
	return n;
}

} // namespace ramosaic
