// SPDX-License-Identifier: MIT

#include "ramosaic/Interference.hpp"
#include "ramosaic/Error.hpp"

namespace ramosaic {

namespace {

bool readsShared(OpKind k)
{
	return k == OpKind::Load || k == OpKind::Cas || k == OpKind::FetchAdd || k == OpKind::Lock;
}

bool publishes(OpKind reader, OpKind writer)
{
	if (reader == OpKind::Lock)
		return writer == OpKind::Unlock;
	return writer == OpKind::Store || writer == OpKind::Cas || writer == OpKind::FetchAdd;
}

} // namespace

InterferenceMap getInterfs(const Model &m)
{
	InterferenceMap im;
	im.threads.resize(m.threads().size());
	for (std::size_t t = 0; t < m.threads().size(); ++t) {
		const auto &cfg = m.threads()[t].cfg;
		for (std::size_t n = 0; n < cfg.nodes.size(); ++n) {
			const auto &node = cfg.nodes[n];
			if (node.kind != NodeKind::Op || !readsShared(node.instr.kind))
				continue;
			ReadChoice rc;
			auto var = m.info(static_cast<ThreadId>(t), static_cast<int>(n)).var;
			for (std::size_t u = 0; u < m.threads().size(); ++u) {
				if (u == t)
					continue;
				const auto &ucfg = m.threads()[u].cfg;
				for (std::size_t k = 0; k < ucfg.nodes.size(); ++k) {
					const auto &w = ucfg.nodes[k];
					const auto &wi = m.info(static_cast<ThreadId>(u), static_cast<int>(k));
					if (w.kind == NodeKind::Op && wi.var == var && publishes(node.instr.kind, w.instr.kind))
						rc.sources.push_back(Source{wi.loc, wi.event});
				}
			}
			im.threads[t][static_cast<int>(n)] = std::move(rc);
		}
	}
	return im;
}

PpoRelation::PpoRelation(const Model &m)
{
	std::size_t next = 2;
	for (const auto &t : m.threads()) {
		offset_.push_back(next);
		next += t.cfg.nodes.size();
	}
	size_ = next;
	rel_ = BitMatrix(size_);
	for (std::size_t i = 0; i < size_; ++i) {
		rel_.set(i, i);
		rel_.set(0, i);
		rel_.set(i, 1);
	}
	for (std::size_t t = 0; t < m.threads().size(); ++t) {
		const auto &cfg = m.threads()[t].cfg;
		for (std::size_t n = 0; n < cfg.nodes.size(); ++n)
			for (auto s : cfg.nodes[n].succs)
				rel_.set(offset_[t] + n, offset_[t] + s);
	}
	rel_.transitiveClose();
}

std::size_t PpoRelation::index(Point p) const
{
	if (p.thread == Point::Init)
		return 0;
	if (p.thread == Point::Final)
		return 1;
	return offset_[p.thread] + static_cast<std::size_t>(p.node);
}

bool PpoRelation::ppo(Point a, Point b) const
{
	return rel_.get(index(a), index(b));
}

bool PpoRelation::reflexive() const
{
	for (std::size_t i = 0; i < size_; ++i)
		if (!rel_.get(i, i))
			return false;
	return true;
}

bool PpoRelation::transitive() const
{
	for (std::size_t i = 0; i < size_; ++i)
		for (std::size_t j = 0; j < size_; ++j)
			if (rel_.get(i, j))
				for (std::size_t k = 0; k < size_; ++k)
					if (rel_.get(j, k) && !rel_.get(i, k))
						return false;
	return true;
}

PpoRelation ppoClosure(const Model &m)
{
	return PpoRelation(m);
}

bool isFeasible(const Model &m, const InterferenceCombination &ic, const PpoRelation &ppo)
{
	auto pointOf = [&](const Source &s) {
		const auto &loc = m.locations()[s.loc];
		return Point{loc.thread, loc.node};
	};
	for (const auto &[l, s] : ic.choices) {
		if (!s)
			continue;
		for (const auto &[l2, s2] : ic.choices) {
			if (!s2 || l == l2)
				continue;
			if (ppo.ppo(Point{ic.thread, l}, Point{ic.thread, l2}) && ppo.ppo(pointOf(*s2), pointOf(*s)))
				return false;
		}
	}
	return true;
}

std::vector<std::vector<InterferenceCombination>> feasibleCombinations(const Model &m, bool prune,
                                                                       std::size_t budget)
{
	auto im = getInterfs(m);
	PpoRelation ppo(m);
	std::vector<std::vector<InterferenceCombination>> out(m.threads().size());
	for (std::size_t t = 0; t < m.threads().size(); ++t) {
		std::vector<std::pair<int, const ReadChoice *>> loads;
		for (const auto &[n, rc] : im.threads[t])
			if (m.node(static_cast<ThreadId>(t), n).instr.kind != OpKind::Lock)
				loads.emplace_back(n, &rc);
		std::size_t total = 1;
		for (const auto &l : loads) {
			total *= l.second->sources.size() + 1;
			if (total > budget)
				throw CombinationBudgetExceeded("thread " + m.threads()[t].name + " exceeds " +
				                                std::to_string(budget) + " interference combinations");
		}
		std::vector<std::size_t> digit(loads.size(), 0);
		for (std::size_t k = 0; k < total; ++k) {
			InterferenceCombination ic;
			ic.thread = static_cast<ThreadId>(t);
			for (std::size_t i = 0; i < loads.size(); ++i) {
				std::optional<Source> c;
				if (digit[i] > 0)
					c = loads[i].second->sources[digit[i] - 1];
				ic.choices.emplace_back(loads[i].first, c);
			}
			if (!prune || isFeasible(m, ic, ppo))
				out[t].push_back(std::move(ic));
			for (std::size_t i = 0; i < loads.size(); ++i) {
				if (++digit[i] <= loads[i].second->sources.size())
					break;
				digit[i] = 0;
			}
		}
	}
	return out;
}

std::map<int, ReadChoice> restrictTo(const InterferenceMap &im, const InterferenceCombination &ic)
{
	auto out = im.threads[ic.thread];
	for (const auto &[n, c] : ic.choices) {
		ReadChoice rc;
		rc.ctx = !c;
		if (c)
			rc.sources.push_back(*c);
		out[n] = rc;
	}
	return out;
}

} // namespace ramosaic
