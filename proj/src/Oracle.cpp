// SPDX-License-Identifier: MIT

#include "ramosaic/Oracle.hpp"
#include "ramosaic/Error.hpp"

#include <algorithm>
#include <unordered_set>

namespace ramosaic {

namespace {

struct OState {
	std::vector<int> pc; /* next node per thread, -1 once exited */
	std::vector<std::int64_t> regs;
	std::vector<OracleWrite> writes;
	std::vector<std::vector<int>> wview; /* per write: latest visible write per variable */
	std::vector<std::vector<int>> mo;
	std::vector<std::vector<int>> tview;
	std::vector<char> readByRmw;
	std::vector<std::vector<OracleOp>> traces;
};

bool sharedKind(OpKind k)
{
	return isSharedAccess(k);
}

class Enumerator {
public:
	Enumerator(const Model &m, OracleResult &res) : m_(m), res_(res) {}

	void run()
	{
		OState s;
		auto nv = m_.vars().size();
		s.pc.resize(m_.threads().size());
		s.regs.assign(m_.slotNames().size(), 0);
		s.mo.resize(nv);
		for (std::size_t v = 0; v < nv; ++v) {
			OracleWrite w;
			w.node = static_cast<int>(v);
			w.var = static_cast<VarId>(v);
			w.value = m_.vars()[v].init;
			if (m_.vars()[v].slot >= 0)
				s.regs[m_.vars()[v].slot] = w.value;
			s.writes.push_back(w);
			s.mo[v].push_back(static_cast<int>(v));
			s.readByRmw.push_back(0);
		}
		std::vector<int> initView(nv);
		for (std::size_t v = 0; v < nv; ++v)
			initView[v] = static_cast<int>(v);
		s.wview.assign(nv, initView);
		s.tview.assign(m_.threads().size(), initView);
		s.traces.resize(m_.threads().size());
		for (std::size_t t = 0; t < m_.threads().size(); ++t)
			s.pc[t] = m_.threads()[t].cfg.entry;

		std::vector<OState> states{s};
		for (std::size_t t = 0; t < m_.threads().size(); ++t) {
			std::vector<OState> next;
			for (auto &st : states)
				runLocal(std::move(st), static_cast<ThreadId>(t), next);
			states = std::move(next);
		}
		for (auto &st : states)
			explore(std::move(st));
	}

private:
	std::int64_t eval(const IntExpr &e, const OState &s) const
	{
		return evalConcrete(e, [&](int slot) { return s.regs[slot]; });
	}
	bool eval(const BoolExpr &e, const OState &s) const
	{
		return evalConcrete(e, [&](int slot) { return s.regs[slot]; });
	}

	int pos(const OState &s, VarId x, int w) const
	{
		const auto &mo = s.mo[x];
		return static_cast<int>(std::find(mo.begin(), mo.end(), w) - mo.begin());
	}

	std::vector<int> joinView(const OState &s, const std::vector<int> &a, const std::vector<int> &b) const
	{
		auto r = a;
		for (std::size_t v = 0; v < r.size(); ++v)
			if (pos(s, static_cast<VarId>(v), b[v]) > pos(s, static_cast<VarId>(v), a[v]))
				r[v] = b[v];
		return r;
	}

	void snapshot(const OState &s, ThreadId t, LocId loc)
	{
		std::vector<std::int64_t> regs;
		for (auto r : m_.threads()[t].regs)
			regs.push_back(s.regs[r]);
		res_.snapshots[loc].insert(std::move(regs));
	}

	/* runs thread t's local instructions until its next shared one */
	void runLocal(OState s, ThreadId t, std::vector<OState> &out)
	{
		const auto &cfg = m_.threads()[t].cfg;
		while (true) {
			auto n = s.pc[t];
			if (n < 0) {
				out.push_back(std::move(s));
				return;
			}
			const auto &node = cfg.nodes[n];
			const auto &info = m_.info(t, n);
			if (node.kind == NodeKind::Op) {
				const auto &i = node.instr;
				if (sharedKind(i.kind)) {
					out.push_back(std::move(s));
					return;
				}
				if (i.kind == OpKind::Assign)
					s.regs[info.reg] = eval(i.value, s);
				else if (i.kind == OpKind::Assume && !eval(i.cond, s))
					return;
				else if (i.kind == OpKind::Assert && !eval(i.cond, s))
					res_.assertViolations.insert(info.loc);
			}
			snapshot(s, t, info.loc);
			if (node.succs.empty()) {
				s.pc[t] = -1;
				continue;
			}
			if (node.succs.size() == 1) {
				s.pc[t] = node.succs[0];
				continue;
			}
			for (auto c : node.succs) {
				OState copy = s;
				copy.pc[t] = c;
				runLocal(std::move(copy), t, out);
			}
			return;
		}
	}

	void advance(OState s, ThreadId t, int n, LocId loc)
	{
		snapshot(s, t, loc);
		const auto &node = m_.node(t, n);
		std::vector<OState> next;
		if (node.succs.empty()) {
			s.pc[t] = -1;
			next.push_back(std::move(s));
		} else {
			for (auto c : node.succs) {
				OState copy = s;
				copy.pc[t] = c;
				runLocal(std::move(copy), t, next);
			}
		}
		for (auto &st : next)
			explore(std::move(st));
	}

	int addWrite(OState &s, ThreadId t, int n, VarId x, std::int64_t value, bool rmw, std::vector<int> view)
	{
		OracleWrite w;
		w.thread = t;
		w.node = n;
		w.var = x;
		w.value = value;
		w.rmw = rmw;
		w.event = m_.info(t, n).event;
		auto id = static_cast<int>(s.writes.size());
		s.writes.push_back(w);
		s.readByRmw.push_back(0);
		view[x] = id;
		s.wview.push_back(view);
		s.tview[t] = std::move(view);
		return id;
	}

	void store(const OState &s, ThreadId t, int n, VarId x, std::int64_t value)
	{
		auto from = pos(s, x, s.tview[t][x]) + 1;
		auto size = static_cast<int>(s.mo[x].size());
		for (int p = from; p <= size; ++p) {
			if (p < size && s.writes[s.mo[x][p]].rmw)
				continue;
			OState ns = s;
			auto id = addWrite(ns, t, n, x, value, false, ns.tview[t]);
			ns.mo[x].insert(ns.mo[x].begin() + p, id);
			ns.traces[t].push_back(OracleOp{n, id, -1, 0});
			advance(std::move(ns), t, n, m_.info(t, n).loc);
		}
	}

	void step(const OState &s, ThreadId t)
	{
		auto n = s.pc[t];
		const auto &i = m_.node(t, n).instr;
		const auto &info = m_.info(t, n);
		auto x = info.var;
		auto from = pos(s, x, s.tview[t][x]);
		auto size = static_cast<int>(s.mo[x].size());
		switch (i.kind) {
		case OpKind::Store: store(s, t, n, x, eval(i.value, s)); return;
		case OpKind::Unlock: store(s, t, n, x, 0); return;
		case OpKind::Load:
			for (int p = from; p < size; ++p) {
				auto w = s.mo[x][p];
				OState ns = s;
				ns.regs[info.reg] = s.writes[w].value;
				ns.tview[t] = joinView(ns, ns.tview[t], ns.wview[w]);
				ns.traces[t].push_back(OracleOp{n, -1, w, s.writes[w].value});
				advance(std::move(ns), t, n, info.loc);
			}
			return;
		case OpKind::Cas:
		case OpKind::FetchAdd:
		case OpKind::Lock:
			for (int p = from; p < size; ++p) {
				auto w = s.mo[x][p];
				auto v = s.writes[w].value;
				bool success;
				std::int64_t next = 0;
				OState ns = s;
				if (i.kind == OpKind::Lock) {
					success = v == 0;
					next = 1;
					if (!success)
						continue;
				} else {
					ns.regs[info.reg] = v;
					if (i.kind == OpKind::Cas) {
						success = v == eval(i.expected, ns);
						next = eval(i.value, ns);
					} else {
						success = true;
						next = v + eval(i.value, ns);
					}
				}
				auto view = joinView(ns, ns.tview[t], ns.wview[w]);
				if (!success) {
					ns.tview[t] = std::move(view);
					ns.traces[t].push_back(OracleOp{n, -1, w, v});
					advance(std::move(ns), t, n, info.failLoc);
					continue;
				}
				if (s.readByRmw[w])
					continue;
				ns.readByRmw[w] = 1;
				auto id = addWrite(ns, t, n, x, next, true, std::move(view));
				ns.mo[x].insert(ns.mo[x].begin() + p + 1, id);
				ns.traces[t].push_back(OracleOp{n, id, w, v});
				advance(std::move(ns), t, n, info.loc);
			}
			return;
		default: return;
		}
	}

	std::string key(const OState &s) const
	{
		auto canon = [&](int w) {
			const auto &wr = s.writes[w];
			return std::to_string(wr.thread) + ":" + std::to_string(wr.node);
		};
		std::string k;
		for (std::size_t t = 0; t < s.pc.size(); ++t) {
			k += "T" + std::to_string(s.pc[t]);
			for (const auto &op : s.traces[t])
				k += "," + std::to_string(op.node) + "<" + (op.source >= 0 ? canon(op.source) : "");
		}
		k += "|";
		for (auto r : s.regs)
			k += std::to_string(r) + ",";
		for (const auto &mo : s.mo) {
			k += "|";
			for (auto w : mo)
				k += canon(w) + ",";
		}
		return k;
	}

	void explore(OState s)
	{
		if (!seen_.insert(key(s)).second)
			return;
		++res_.statesExplored;
		bool done = true;
		for (std::size_t t = 0; t < s.pc.size(); ++t) {
			if (s.pc[t] < 0)
				continue;
			done = false;
			step(s, static_cast<ThreadId>(t));
		}
		if (!done)
			return;
		std::vector<std::int64_t> outcome;
		for (std::size_t slot = 0; slot < s.regs.size(); ++slot)
			if (m_.slotOwner()[slot] >= 0)
				outcome.push_back(s.regs[slot]);
		res_.outcomes.insert(outcome);
		if (m_.postcondition() && !eval(m_.postcondition(), s))
			res_.finalViolated = true;
		Execution x;
		x.writes = s.writes;
		x.mo = s.mo;
		x.threads = s.traces;
		x.regs = s.regs;
		res_.executions.push_back(std::move(x));
	}

	const Model &m_;
	OracleResult &res_;
	std::unordered_set<std::string> seen_;
};

} // namespace

OracleResult enumerate(const Model &m, const OracleOptions &opts)
{
	if (m.loopMode())
		throw TooLarge("the oracle needs a loop-free program");
	if (m.sharedEventCount() > opts.guard)
		throw TooLarge(std::to_string(m.sharedEventCount()) + " shared-memory instructions exceed the guard of " +
		               std::to_string(opts.guard));
	OracleResult res;
	Enumerator(m, res).run();
	return res;
}

std::string validate(const Model &m, const Execution &x)
{
	auto nv = x.mo.size();
	std::vector<int> writeEvent(x.writes.size(), -1);
	std::vector<std::pair<ThreadId, const OracleOp *>> ops;
	for (std::size_t v = 0; v < nv; ++v)
		writeEvent[v] = static_cast<int>(v);
	int next = static_cast<int>(nv);
	for (std::size_t t = 0; t < x.threads.size(); ++t)
		for (const auto &op : x.threads[t]) {
			ops.emplace_back(static_cast<ThreadId>(t), &op);
			if (op.write >= 0)
				writeEvent[op.write] = next;
			++next;
		}
	auto n = static_cast<std::size_t>(next);
	BitMatrix hb(n);
	for (std::size_t e = nv; e < n; ++e)
		for (std::size_t v = 0; v < nv; ++v)
			hb.set(v, e);
	for (std::size_t a = 0; a < ops.size(); ++a)
		for (std::size_t b = a + 1; b < ops.size(); ++b)
			if (ops[a].first == ops[b].first)
				hb.set(nv + a, nv + b);
	for (std::size_t e = 0; e < ops.size(); ++e)
		if (ops[e].second->source >= 0)
			hb.set(writeEvent[ops[e].second->source], nv + e);
	hb.transitiveClose();

	for (std::size_t e = 0; e < n; ++e)
		if (hb.get(e, e))
			return "hb is cyclic";

	std::vector<int> pos(x.writes.size(), -1);
	for (std::size_t v = 0; v < nv; ++v) {
		std::set<int> seen;
		for (std::size_t p = 0; p < x.mo[v].size(); ++p) {
			auto w = x.mo[v][p];
			if (x.writes[w].var != static_cast<VarId>(v) || !seen.insert(w).second)
				return "mo of " + m.vars()[v].name + " is not a total order of its writes";
			pos[w] = static_cast<int>(p);
		}
		if (x.mo[v].empty() || x.mo[v][0] != static_cast<int>(v))
			return "init is not mo-first";
	}
	for (std::size_t w = 0; w < x.writes.size(); ++w)
		if (pos[w] < 0 || writeEvent[w] < 0)
			return "write outside mo";

	for (std::size_t a = 0; a < x.writes.size(); ++a)
		for (std::size_t b = 0; b < x.writes.size(); ++b)
			if (a != b && x.writes[a].var == x.writes[b].var && hb.get(writeEvent[a], writeEvent[b]) &&
			    pos[a] > pos[b])
				return "mo contradicts hb";

	for (std::size_t e = 0; e < ops.size(); ++e) {
		const auto &op = *ops[e].second;
		if (op.source < 0)
			continue;
		const auto &src = x.writes[op.source];
		auto var = m.info(ops[e].first, op.node).var;
		if (src.var != var)
			return "read from another variable";
		if (src.value != op.value)
			return "read value differs from the write";
		if (m.node(ops[e].first, op.node).instr.kind == OpKind::Lock && op.value != 0)
			return "lock acquired a held mutex";
		if (op.write >= 0 && pos[op.write] != pos[op.source] + 1)
			return "rmw does not follow its source in mo";
		for (auto w2 : x.mo[var]) {
			if (pos[w2] <= pos[op.source] || w2 == op.write)
				continue;
			if (hb.get(writeEvent[w2], nv + e))
				return "read from an hb-overwritten write";
		}
	}
	return {};
}

std::vector<LosetSet> losetsOf(const OracleResult &r, VarId var)
{
	std::map<std::vector<EventId>, std::set<Loset>> groups;
	for (const auto &x : r.executions) {
		Loset l;
		for (auto w : x.mo[var])
			if (x.writes[w].thread >= 0)
				l.push_back(x.writes[w].event);
		auto events = l;
		std::sort(events.begin(), events.end());
		groups[events].insert(l);
	}
	std::vector<LosetSet> out;
	for (auto &[events, losets] : groups)
		out.push_back(LosetSet{events, losets});
	return out;
}

SoundnessReport checkSoundness(const OracleResult &oracle, const AnalysisResult &result)
{
	SoundnessReport rep;
	const auto &m = *result.model;
	auto verdictAt = [&](LocId loc) -> const AssertionVerdict * {
		for (const auto &v : result.verdicts)
			if (v.loc == loc)
				return &v;
		return nullptr;
	};
	for (auto loc : oracle.assertViolations) {
		const auto *v = verdictAt(loc);
		if (!v || v->verdict != Verdict::PossiblyViolated)
			rep.problems.push_back("assert " + m.locations()[loc].name + " fails in some execution but is proved");
	}
	if (oracle.finalViolated) {
		const auto *v = verdictAt(-1);
		if (!v || v->verdict != Verdict::PossiblyViolated)
			rep.problems.push_back("postcondition fails in some execution but is proved");
	}

	for (const auto &[loc, vals] : oracle.snapshots) {
		const auto &regs = m.threads()[m.locations()[loc].thread].regs;
		const auto &states = result.states.at(loc);
		for (const auto &val : vals) {
			bool hit = std::any_of(states.begin(), states.end(), [&](const AbstractState &s) {
				for (std::size_t k = 0; k < regs.size(); ++k)
					if (!s.mem[regs[k]].contains(val[k]))
						return false;
				return true;
			});
			if (!hit) {
				std::string desc;
				for (std::size_t k = 0; k < regs.size(); ++k)
					desc += " " + m.slotNames()[regs[k]] + "=" + std::to_string(val[k]);
				rep.problems.push_back("registers" + desc + " at " + m.locations()[loc].name + " not covered");
			}
		}
	}

	if (oracle.executions.empty())
		return rep;
	for (std::size_t v = 0; v < m.vars().size(); ++v) {
		MoPoset joined = MoPoset::bottom();
		for (std::size_t t = 0; t < m.threads().size(); ++t) {
			auto exitLoc = m.info(static_cast<ThreadId>(t), m.threads()[t].cfg.exit).loc;
			for (const auto &s : result.states.at(exitLoc))
				joined = join(joined, s.mo[v]);
		}
		if (joined.isBottom())
			continue;
		for (const auto &group : losetsOf(oracle, static_cast<VarId>(v))) {
			auto alpha = alphaFromLosets(group);
			bool ok = m.config().mode == MoMode::Abstract ? betaRelated(alpha, joined, m.sb()) : less(alpha, joined);
			if (!ok)
				rep.problems.push_back("exit posets of " + m.vars()[v].name + " " + toString(joined, m.events()) +
				                       " do not abstract " + toString(alpha, m.events()));
		}
	}
	return rep;
}

std::vector<std::string> formatOutcomes(const Model &m, const OracleResult &r)
{
	std::vector<std::string> out;
	for (const auto &o : r.outcomes) {
		std::string line;
		std::size_t k = 0;
		for (std::size_t slot = 0; slot < m.slotNames().size(); ++slot) {
			if (m.slotOwner()[slot] < 0)
				continue;
			if (!line.empty())
				line += " ";
			line += m.slotNames()[slot] + "=" + std::to_string(o[k++]);
		}
		out.push_back(line);
	}
	return out;
}

} // namespace ramosaic
