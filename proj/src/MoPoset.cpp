// SPDX-License-Identifier: MIT

#include "ramosaic/MoPoset.hpp"
#include "ramosaic/Error.hpp"

#include <algorithm>
#include <stdexcept>

namespace ramosaic {

namespace {

template <typename T>
void sortUnique(std::vector<T> &v)
{
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
bool includes(const std::vector<T> &big, const std::vector<T> &small)
{
	return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <typename T>
std::vector<T> intersect(const std::vector<T> &a, const std::vector<T> &b)
{
	std::vector<T> out;
	std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

/* Keeps the events satisfying keep and the pairs between them */
template <typename F>
MoPoset restrict(const MoPoset &p, F &&keep)
{
	std::vector<EventId> ev;
	for (auto e : p.events())
		if (keep(e))
			ev.push_back(e);
	std::vector<EventPair> ord;
	for (auto &[a, b] : p.order())
		if (keep(a) && keep(b))
			ord.emplace_back(a, b);
	return MoPoset::make(std::move(ev), std::move(ord));
}

} // namespace

MoPoset MoPoset::bottom()
{
	MoPoset p;
	p.bottom_ = true;
	return p;
}

MoPoset MoPoset::make(std::vector<EventId> events, std::vector<EventPair> order)
{
	sortUnique(events);
	sortUnique(order);
	auto index = [&](EventId e) {
		auto it = std::lower_bound(events.begin(), events.end(), e);
		if (it == events.end() || *it != e)
			throw std::invalid_argument("order pair names an event outside the poset");
		return static_cast<std::size_t>(it - events.begin());
	};
	BitMatrix m(events.size());
	for (auto &[a, b] : order)
		m.set(index(a), index(b));
	m.transitiveClose();
	MoPoset p;
	p.events_ = std::move(events);
	for (std::size_t i = 0; i < p.events_.size(); ++i) {
		if (m.get(i, i))
			return bottom();
		for (std::size_t j = 0; j < p.events_.size(); ++j)
			if (m.get(i, j))
				p.order_.emplace_back(p.events_[i], p.events_[j]);
	}
	return p;
}

MoPoset MoPoset::chain(const std::vector<EventId> &seq)
{
	std::vector<EventPair> ord;
	for (std::size_t i = 0; i + 1 < seq.size(); ++i)
		ord.emplace_back(seq[i], seq[i + 1]);
	return make(seq, std::move(ord));
}

bool MoPoset::contains(EventId e) const
{
	return std::binary_search(events_.begin(), events_.end(), e);
}

bool MoPoset::ordered(EventId a, EventId b) const
{
	return std::binary_search(order_.begin(), order_.end(), EventPair{a, b});
}

std::vector<EventId> MoPoset::lasts() const
{
	std::vector<EventId> out;
	for (auto e : events_) {
		auto it = std::lower_bound(order_.begin(), order_.end(), EventPair{e, -1});
		if (it == order_.end() || it->first != e)
			out.push_back(e);
	}
	return out;
}

bool MoPoset::isTotal() const
{
	auto n = events_.size();
	return !bottom_ && order_.size() == n * (n - (n ? 1 : 0)) / 2;
}

bool MoPoset::wellFormed() const
{
	if (bottom_)
		return events_.empty() && order_.empty();
	if (!std::is_sorted(events_.begin(), events_.end()) || !std::is_sorted(order_.begin(), order_.end()))
		return false;
	for (auto &[a, b] : order_) {
		if (a == b || !contains(a) || !contains(b) || ordered(b, a))
			return false;
		for (auto &[c, d] : order_)
			if (c == b && !ordered(a, d))
				return false;
	}
	return true;
}

bool less(const MoPoset &p1, const MoPoset &p2)
{
	if (p1.isBottom())
		return true;
	if (p2.isBottom())
		return false;
	return includes(p1.events(), p2.events()) && includes(p1.order(), p2.order());
}

static bool oneSidedConsistent(const MoPoset &p1, const MoPoset &p2, MoMode mode, const SbIndex &sb)
{
	for (auto &[a, b] : p1.order()) {
		if (p2.ordered(b, a))
			return false;
		if (mode != MoMode::Abstract)
			continue;
		for (auto &[c, d] : p2.order())
			if (d == a && sb.sb(b, c))
				return false;
	}
	return true;
}

bool consistent(const MoPoset &p1, const MoPoset &p2, MoMode mode, const SbIndex &sb)
{
	if (p1.isBottom() || p2.isBottom())
		return false;
	return oneSidedConsistent(p1, p2, mode, sb) && oneSidedConsistent(p2, p1, mode, sb);
}

bool validExtension(const MoPoset &p, EventId st, MoMode mode, const SbIndex &sb)
{
	if (p.isBottom())
		return false;
	for (auto &[a, b] : p.order())
		if (a == st)
			return false;
	if (mode == MoMode::Abstract)
		for (auto b : p.events())
			if (sb.sb(st, b))
				return false;
	return true;
}

MoPoset append(const MoPoset &p, EventId st, MoMode mode, const SbIndex &sb)
{
	/* an event already present would be ordered after itself */
	if (!validExtension(p, st, mode, sb) || p.contains(st))
		return MoPoset::bottom();
	auto kept = p;
	if (mode == MoMode::Abstract)
		kept = restrict(p, [&](EventId a) { return !sb.precedes(a, st) || sb.isCritical(a); });
	auto ev = kept.events();
	auto ord = kept.order();
	for (auto a : kept.events())
		ord.emplace_back(a, st);
	ev.push_back(st);
	return MoPoset::make(std::move(ev), std::move(ord));
}

MoPoset meet(const MoPoset &p1, const MoPoset &p2, MoMode mode, const SbIndex &sb)
{
	if (!consistent(p1, p2, mode, sb))
		return MoPoset::bottom();
	auto ev = p1.events();
	ev.insert(ev.end(), p2.events().begin(), p2.events().end());
	auto ord = p1.order();
	ord.insert(ord.end(), p2.order().begin(), p2.order().end());
	/* longer alternating cycles survive the pairwise check; make() catches them */
	return MoPoset::make(std::move(ev), std::move(ord));
}

MoPoset join(const MoPoset &p1, const MoPoset &p2)
{
	if (p1.isBottom())
		return p2;
	if (p2.isBottom())
		return p1;
	return MoPoset::make(intersect(p1.events(), p2.events()), intersect(p1.order(), p2.order()));
}

MoPoset widen(const MoPoset &p1, const MoPoset &p2, const EventTable &events)
{
	if (p1.isBottom())
		return p2;
	if (p2.isBottom())
		return p1;
	auto common = intersect(p1.events(), p2.events());
	auto earliest = [&](EventId a) {
		for (auto b : common)
			if (events[b].label.name == events[a].label.name &&
			    events[b].label.instance < events[a].label.instance)
				return false;
		return true;
	};
	auto shared = restrict(MoPoset::make(common, intersect(p1.order(), p2.order())), earliest);
	/* any change drops the whole order, so a chain changes once and then
	 * only loses events */
	if (shared != p1)
		return MoPoset::make(shared.events(), {});
	return shared;
}

static bool superseded(const MoPoset &p, EventId a, const SbIndex &sb)
{
	if (sb.isCritical(a))
		return false;
	for (auto b : p.events())
		if (sb.precedes(a, b))
			return true;
	return false;
}

MoPoset absAlpha(const MoPoset &p, const SbIndex &sb)
{
	if (p.isBottom())
		return p;
	return restrict(p, [&](EventId a) { return !superseded(p, a, sb); });
}

bool betaRelated(const MoPoset &p1, const MoPoset &p2, const SbIndex &sb)
{
	if (p1.isBottom())
		return true;
	if (p2.isBottom())
		return false;
	for (auto e : p2.events())
		if (!p1.contains(e) || superseded(p1, e, sb))
			return false;
	return includes(p1.order(), p2.order());
}

/*** Loset bridge ***/

LosetSet losetTop()
{
	LosetSet t;
	t.losets.insert(Loset{});
	return t;
}

MoPoset alphaFromLosets(const LosetSet &t)
{
	if (t.isBottom())
		return MoPoset::bottom();
	auto sorted = t.events;
	sortUnique(sorted);
	std::vector<EventPair> common;
	bool first = true;
	for (const auto &l : t.losets) {
		auto check = l;
		std::sort(check.begin(), check.end());
		if (check != sorted)
			throw std::invalid_argument("loset does not cover the shared event set");
		std::vector<EventPair> pairs;
		for (std::size_t i = 0; i < l.size(); ++i)
			for (std::size_t j = i + 1; j < l.size(); ++j)
				pairs.emplace_back(l[i], l[j]);
		std::sort(pairs.begin(), pairs.end());
		common = first ? pairs : intersect(common, pairs);
		first = false;
	}
	return MoPoset::make(sorted, common);
}

LosetSet gammaToLosets(const MoPoset &p, std::size_t guard)
{
	LosetSet t;
	if (p.isBottom())
		return t;
	if (p.events().size() > guard)
		throw TooLarge("linearization guard: " + std::to_string(p.events().size()) + " events");
	t.events = p.events();
	auto perm = p.events();
	do {
		bool ok = true;
		for (std::size_t i = 0; i < perm.size() && ok; ++i)
			for (std::size_t j = i + 1; j < perm.size() && ok; ++j)
				if (p.ordered(perm[j], perm[i]))
					ok = false;
		if (ok)
			t.losets.insert(perm);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return t;
}

bool losetLeq(const LosetSet &t1, const LosetSet &t2)
{
	if (t1.isBottom())
		return true;
	if (t2.isBottom())
		return false;
	auto s1 = t1.events, s2 = t2.events;
	sortUnique(s1);
	sortUnique(s2);
	if (!includes(s1, s2))
		return false;
	for (const auto &m : t1.losets) {
		Loset r;
		for (auto e : m)
			if (std::binary_search(s2.begin(), s2.end(), e))
				r.push_back(e);
		if (!t2.losets.count(r))
			return false;
	}
	return true;
}

std::string toString(const MoPoset &p, const EventTable &events)
{
	if (p.isBottom())
		return "⊥";
	auto byLabel = [&](EventId a, EventId b) { return events[a].label < events[b].label; };
	auto ev = p.events();
	std::sort(ev.begin(), ev.end(), byLabel);
	std::string out = "{";
	for (std::size_t i = 0; i < ev.size(); ++i)
		out += (i ? ", " : "") + events.name(ev[i]);
	auto ord = p.order();
	std::sort(ord.begin(), ord.end(), [&](const EventPair &x, const EventPair &y) {
		if (x.first != y.first)
			return byLabel(x.first, y.first);
		return byLabel(x.second, y.second);
	});
	if (!ord.empty()) {
		out += " | ";
		for (std::size_t i = 0; i < ord.size(); ++i)
			out += (i ? ", " : "") + events.name(ord[i].first) + "<" + events.name(ord[i].second);
	}
	return out + "}";
}

} // namespace ramosaic
