// SPDX-License-Identifier: MIT

#include "ramosaic/AbstractState.hpp"

#include <algorithm>

namespace ramosaic {

bool AbstractState::hasBottom() const
{
	return std::any_of(mo.begin(), mo.end(), [](const MoPoset &p) { return p.isBottom(); });
}

FlagPolicy FlagPolicy::of(const Model &m)
{
	FlagPolicy fp;
	for (std::size_t v = 0; v < m.vars().size(); ++v)
		fp.exactSet.push_back(m.exactSetVar(static_cast<VarId>(v)));
	return fp;
}

std::size_t StateSet::totalStates() const
{
	std::size_t n = 0;
	for (const auto &s : sets_)
		n += s.size();
	return n;
}

namespace {

bool subset(const std::vector<EventId> &a, const MoPoset &p)
{
	return std::all_of(a.begin(), a.end(), [&](EventId e) { return p.contains(e); });
}

AbstractState memoryJoin(const AbstractState &a, const AbstractState &b)
{
	auto r = a;
	r.mem = a.mem.join(b.mem);
	for (std::size_t v = 0; v < r.exact.size(); ++v)
		r.exact[v] = a.exact[v] && b.exact[v];
	return r;
}

AbstractState posetJoin(const AbstractState &a, const AbstractState &b, const FlagPolicy &policy)
{
	auto r = a;
	for (std::size_t v = 0; v < r.mo.size(); ++v) {
		r.mo[v] = join(a.mo[v], b.mo[v]);
		bool both = a.exact[v] && b.exact[v];
		bool setMeaning = v < policy.exactSet.size() && policy.exactSet[v];
		if (setMeaning)
			r.exact[v] = both && a.mo[v].events() == b.mo[v].events();
		else
			r.exact[v] = both && subset(a.mo[v].lasts(), r.mo[v]) && subset(b.mo[v].lasts(), r.mo[v]);
	}
	return r;
}

} // namespace

/* rmw chains count as memory: joining them would forget a fence order */
static bool sameChains(const AbstractState &a, const AbstractState &b, const FlagPolicy &policy)
{
	for (std::size_t v = 0; v < policy.exactSet.size(); ++v)
		if (policy.exactSet[v] && a.mo[v] != b.mo[v])
			return false;
	return true;
}

bool StateSet::merge(AbstractState s, const FlagPolicy &policy)
{
	if (s.hasBottom())
		return false;
	auto &set = sets_[s.at];
	std::vector<AbstractState> removed;
	while (true) {
		/* sets are sorted by poset map first */
		auto same = std::lower_bound(set.begin(), set.end(), s.mo,
		                             [](const AbstractState &t, const std::vector<MoPoset> &mo) { return t.mo < mo; });
		if (same != set.end() && same->mo == s.mo) {
			s = memoryJoin(*same, s);
			removed.push_back(std::move(*same));
			set.erase(same);
			continue;
		}
		auto mem = std::find_if(set.begin(), set.end(),
		                        [&](const AbstractState &t) { return t.mem == s.mem && sameChains(t, s, policy); });
		if (mem != set.end()) {
			s = posetJoin(*mem, s, policy);
			removed.push_back(std::move(*mem));
			set.erase(mem);
			continue;
		}
		break;
	}
	bool changed = !(removed.size() == 1 && removed.front() == s);
	set.insert(std::lower_bound(set.begin(), set.end(), s), std::move(s));
	return changed;
}

bool StateSet::widenInto(AbstractState s, const EventTable &events)
{
	if (s.hasBottom())
		return false;
	auto &set = sets_[s.at];
	auto before = set;
	auto acc = std::move(s);
	std::fill(acc.exact.begin(), acc.exact.end(), 0);
	if (set.empty()) {
		set.push_back(std::move(acc));
		return true;
	}
	auto old = set.front();
	for (std::size_t k = 1; k < set.size(); ++k) {
		old.mem = old.mem.join(set[k].mem);
		for (std::size_t v = 0; v < old.mo.size(); ++v)
			old.mo[v] = join(old.mo[v], set[k].mo[v]);
	}
	AbstractState out = old;
	std::fill(out.exact.begin(), out.exact.end(), 0);
	out.mem = old.mem.widen(old.mem.join(acc.mem));
	for (std::size_t v = 0; v < out.mo.size(); ++v)
		out.mo[v] = widen(old.mo[v], join(old.mo[v], acc.mo[v]), events);
	set.assign(1, std::move(out));
	return set != before;
}

StateSet mergeInto(StateSet ss, AbstractState s, const FlagPolicy &policy)
{
	ss.merge(std::move(s), policy);
	return ss;
}

const std::vector<AbstractState> &statesAt(const StateSet &ss, LocId l)
{
	return ss.at(l);
}

bool equalSets(const StateSet &a, const StateSet &b)
{
	return a == b;
}

std::string dumpState(const AbstractState &s, const Model &m)
{
	std::string out = m.locations()[s.at].name + " |";
	for (std::size_t v = 0; v < m.vars().size(); ++v) {
		out += " " + m.vars()[v].name + ":" + toString(s.mo[v], m.events());
		if (!s.exact[v])
			out += "~";
	}
	out += " |";
	auto thread = m.locations()[s.at].thread;
	for (std::size_t slot = 0; slot < m.slotNames().size(); ++slot) {
		auto owner = m.slotOwner()[slot];
		if (owner != -1 && owner != thread)
			continue;
		out += " " + m.slotNames()[slot] + ":" + s.mem[slot].str();
	}
	return out;
}

} // namespace ramosaic
