// SPDX-License-Identifier: MIT

#include "ramosaic/Transfer.hpp"

#include <algorithm>

namespace ramosaic {

Transfer::Transfer(const Model &m) : m_(m) {}

AbstractState Transfer::entryState(ThreadId t) const
{
	AbstractState s;
	s.at = m_.info(t, m_.threads()[t].cfg.entry).loc;
	s.mo.assign(m_.vars().size(), MoPoset{});
	s.mem = m_.initialMemory();
	s.exact.assign(m_.vars().size(), 1);
	return s;
}

/* every last of p is in q or must precede one of q's events */
bool Transfer::covered(const MoPoset &p, const MoPoset &q) const
{
	for (auto e : p.lasts()) {
		if (q.contains(e))
			continue;
		auto &qe = q.events();
		if (!std::any_of(qe.begin(), qe.end(), [&](EventId b) { return m_.sb().dominates(e, b); }))
			return false;
	}
	return true;
}

namespace {

bool includes(const MoPoset &a, const MoPoset &b)
{
	return std::includes(b.events().begin(), b.events().end(), a.events().begin(), a.events().end());
}

} // namespace

std::optional<AbstractState> Transfer::applyInterference(const AbstractState &target, const AbstractState &source,
                                                         VarId readVar, EventId sourceEvent) const
{
	auto mode = m_.config().mode;
	const auto &sb = m_.sb();
	/* the source cannot know a write the target has not reached yet */
	const auto &here = m_.locations()[target.at];
	for (const auto &p : source.mo)
		for (auto e : p.events())
			if (m_.events()[e].thread == here.thread && !m_.mayReach(here.thread, m_.eventNode(e), here.node))
				return std::nullopt;
	AbstractState r = target;
	for (std::size_t v = 0; v < m_.vars().size(); ++v) {
		const auto &pt = target.mo[v];
		const auto &ps = source.mo[v];
		bool te = target.exact[v], se = source.exact[v];
		bool setVar = m_.exactSetVar(static_cast<VarId>(v));
		bool isRead = static_cast<VarId>(v) == readVar;

		if (setVar && te && se) {
			if (isRead ? !includes(pt, ps) : !(includes(pt, ps) || includes(ps, pt)))
				return std::nullopt;
		}

		MoPoset base = pt;
		if (isRead && sourceEvent >= 0) {
			base = append(pt, sourceEvent, mode, sb);
			if (base.isBottom())
				return std::nullopt;
		}
		r.mo[v] = meet(base, ps, mode, sb);
		if (r.mo[v].isBottom())
			return std::nullopt;
		if (mode == MoMode::Abstract)
			r.mo[v] = absAlpha(r.mo[v], sb);

		if (isRead) {
			r.exact[v] = setVar ? (te && se && sourceEvent >= 0) : sourceEvent >= 0;
		} else {
			r.exact[v] = te && se;
		}

		auto slot = m_.vars()[v].slot;
		if (slot < 0)
			continue;
		if (isRead) {
			r.mem.set(slot, source.mem[slot]);
			continue;
		}
		bool takeS = te && covered(pt, ps);
		bool takeT = se && covered(ps, pt);
		if (takeS && takeT) {
			auto both = target.mem[slot].meet(source.mem[slot]);
			if (both.isEmpty())
				return std::nullopt;
			r.mem.set(slot, both);
		} else if (takeS) {
			r.mem.set(slot, source.mem[slot]);
		} else if (takeT) {
			r.mem.set(slot, target.mem[slot]);
		} else {
			r.mem.set(slot, target.mem[slot].join(source.mem[slot]));
		}
	}
	return r;
}

std::optional<AbstractState> Transfer::appendEvent(AbstractState s, VarId var, EventId e) const
{
	if (e < 0) {
		s.exact[var] = 0;
		return s;
	}
	s.mo[var] = append(s.mo[var], e, m_.config().mode, m_.sb());
	if (s.mo[var].isBottom())
		return std::nullopt;
	if (!m_.exactSetVar(var))
		s.exact[var] = 1;
	return s;
}

std::vector<Transfer::Read> Transfer::reads(const std::vector<AbstractState> &pre, VarId var,
                                            const ReadChoice &choice, const StateSet &global) const
{
	std::vector<Read> out;
	auto slot = m_.vars()[var].slot;
	for (const auto &t : pre) {
		if (choice.ctx)
			out.push_back({t, slot >= 0 ? t.mem[slot] : Interval::top()});
		for (const auto &src : choice.sources) {
			for (const auto &s : global.at(src.loc)) {
				auto r = applyInterference(t, s, var, src.event);
				if (r)
					out.push_back({std::move(*r), slot >= 0 ? s.mem[slot] : Interval::top()});
			}
		}
	}
	return out;
}

std::vector<AbstractState> Transfer::store(ThreadId t, int node, const std::vector<AbstractState> &pre) const
{
	const auto &n = m_.node(t, node);
	const auto &info = m_.info(t, node);
	auto slot = m_.vars()[info.var].slot;
	std::vector<AbstractState> out;
	for (const auto &s : pre) {
		auto v = evalExpr(n.instr.value, s.mem);
		auto r = appendEvent(s, info.var, info.event);
		if (!r)
			continue;
		r->mem.set(slot, v);
		r->at = info.loc;
		out.push_back(std::move(*r));
	}
	return out;
}

std::vector<AbstractState> Transfer::load(ThreadId t, int node, const std::vector<AbstractState> &pre,
                                          const ReadChoice &choice, const StateSet &global) const
{
	const auto &info = m_.info(t, node);
	std::vector<AbstractState> out;
	for (auto &rd : reads(pre, info.var, choice, global)) {
		rd.state.mem.set(info.reg, rd.value);
		rd.state.at = info.loc;
		out.push_back(std::move(rd.state));
	}
	return out;
}

RmwResult Transfer::rmw(ThreadId t, int node, const std::vector<AbstractState> &pre, const ReadChoice &choice,
                        const StateSet &global) const
{
	const auto &n = m_.node(t, node);
	const auto &info = m_.info(t, node);
	auto slot = m_.vars()[info.var].slot;
	bool cas = n.instr.kind == OpKind::Cas;
	RmwResult out;
	for (auto &rd : reads(pre, info.var, choice, global)) {
		auto s = std::move(rd.state);
		s.mem.set(info.reg, rd.value);
		Interval next;
		if (cas) {
			auto fail = refine(s.mem, makeCmp(CmpOp::Ne, makeName(m_.slotNames()[info.reg], info.reg), n.instr.expected));
			if (fail) {
				AbstractState f = s;
				f.mem = std::move(*fail);
				f.mem.set(slot, f.mem[info.reg]);
				f.at = info.failLoc;
				out.failure.push_back(std::move(f));
			}
			auto ok = refine(s.mem, makeCmp(CmpOp::Eq, makeName(m_.slotNames()[info.reg], info.reg), n.instr.expected));
			if (!ok)
				continue;
			s.mem = std::move(*ok);
			next = evalExpr(n.instr.value, s.mem);
		} else {
			next = evalExpr(n.instr.value, s.mem) + s.mem[info.reg];
		}
		auto r = appendEvent(std::move(s), info.var, info.event);
		if (!r)
			continue;
		r->mem.set(slot, next);
		r->at = info.loc;
		out.success.push_back(std::move(*r));
	}
	return out;
}

std::vector<AbstractState> Transfer::lock(ThreadId t, int node, const std::vector<AbstractState> &pre,
                                          const ReadChoice &unlocks, const StateSet &global) const
{
	const auto &info = m_.info(t, node);
	auto var = info.var;
	const auto &events = m_.events();
	std::vector<AbstractState> bases;
	for (const auto &s : pre) {
		bases.push_back(s);
		for (auto last : s.mo[var].lasts()) {
			if (events[last].kind != EventKind::Lock || events[last].thread == t)
				continue;
			auto lt = events[last].thread;
			for (auto un : m_.info(lt, m_.eventNode(last)).matchingUnlocks) {
				const auto &ui = m_.info(lt, un);
				for (const auto &src : global.at(ui.loc)) {
					auto r = applyInterference(s, src, var, ui.event);
					if (r)
						bases.push_back(std::move(*r));
				}
			}
		}
	}
	std::vector<AbstractState> out;
	for (const auto &b : bases) {
		auto lasts = b.mo[var].lasts();
		bool held = b.exact[var] && !lasts.empty() &&
		            std::all_of(lasts.begin(), lasts.end(), [&](EventId e) { return events[e].kind == EventKind::Lock; });
		ReadChoice choice = unlocks;
		choice.ctx = !held;
		for (auto &rd : reads({b}, var, choice, global)) {
			auto r = appendEvent(std::move(rd.state), var, info.event);
			if (!r)
				continue;
			r->at = info.loc;
			out.push_back(std::move(*r));
		}
	}
	return out;
}

std::vector<AbstractState> Transfer::unlock(ThreadId t, int node, const std::vector<AbstractState> &pre) const
{
	const auto &info = m_.info(t, node);
	auto var = info.var;
	std::vector<AbstractState> out;
	for (const auto &s : pre) {
		const auto &p = s.mo[var];
		auto lasts = p.lasts();
		bool stale = false;
		for (auto ln : info.matchingLocks) {
			auto le = m_.info(t, ln).event;
			if (le >= 0 && p.contains(le) && std::find(lasts.begin(), lasts.end(), le) == lasts.end())
				stale = true;
		}
		if (stale)
			continue;
		auto r = appendEvent(s, var, info.event);
		if (!r)
			continue;
		r->at = info.loc;
		out.push_back(std::move(*r));
	}
	return out;
}

std::vector<AbstractState> Transfer::assume(ThreadId t, int node, const std::vector<AbstractState> &pre) const
{
	const auto &n = m_.node(t, node);
	auto loc = m_.info(t, node).loc;
	std::vector<AbstractState> out;
	for (const auto &s : pre) {
		auto mem = refine(s.mem, n.instr.cond);
		if (!mem)
			continue;
		AbstractState r = s;
		r.mem = std::move(*mem);
		r.at = loc;
		out.push_back(std::move(r));
	}
	return out;
}

std::vector<AbstractState> Transfer::assign(ThreadId t, int node, const std::vector<AbstractState> &pre) const
{
	const auto &n = m_.node(t, node);
	const auto &info = m_.info(t, node);
	std::vector<AbstractState> out;
	for (const auto &s : pre) {
		AbstractState r = s;
		r.mem.set(info.reg, evalExpr(n.instr.value, s.mem));
		r.at = info.loc;
		out.push_back(std::move(r));
	}
	return out;
}

std::vector<AbstractState> Transfer::pass(ThreadId t, int node, const std::vector<AbstractState> &pre) const
{
	auto loc = m_.info(t, node).loc;
	std::vector<AbstractState> out = pre;
	for (auto &s : out)
		s.at = loc;
	return out;
}

AssertResult checkAssert(const std::vector<AbstractState> &states, const BoolExpr &cond)
{
	AssertResult r;
	auto negated = makeNot(cond);
	for (const auto &s : states)
		if (refine(s.mem, negated))
			r.witnesses.push_back(s);
	if (!r.witnesses.empty())
		r.verdict = Verdict::PossiblyViolated;
	return r;
}

} // namespace ramosaic
