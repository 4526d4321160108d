// SPDX-License-Identifier: MIT

#include "ramosaic/Program.hpp"

#include <algorithm>
#include <functional>

namespace ramosaic {

std::string Label::str() const
{
	return name + "." + std::to_string(instance);
}

Label entryLabel(const Thread &t)
{
	return Label{t.name + ".entry", 1};
}

Label exitLabel(const Thread &t)
{
	return Label{t.name + ".exit", 1};
}

bool isSharedAccess(OpKind k)
{
	switch (k) {
	case OpKind::Store:
	case OpKind::Load:
	case OpKind::Cas:
	case OpKind::FetchAdd:
	case OpKind::Lock:
	case OpKind::Unlock:
		return true;
	default:
		return false;
	}
}

static bool bodyHasLoops(const std::vector<Stmt> &body)
{
	for (const auto &s : body) {
		if (std::holds_alternative<WhileStmt>(s.node))
			return true;
		if (auto *f = std::get_if<IfStmt>(&s.node))
			if (bodyHasLoops(f->thenBody) || bodyHasLoops(f->elseBody))
				return true;
	}
	return false;
}

bool hasLoops(const Program &p)
{
	return std::any_of(p.threads.begin(), p.threads.end(),
			   [](const Thread &t) { return bodyHasLoops(t.body); });
}

namespace {

class CfgBuilder {
public:
	explicit CfgBuilder(const Thread &t) : thread(t) {}

	Cfg build()
	{
		Instruction entry;
		entry.label = entryLabel(thread);
		entry.cond = makeTrue();
		cfg.entry = addNode(NodeKind::Entry, entry);

		auto frontier = emit(thread.body, {cfg.entry});

		Instruction exit;
		exit.label = exitLabel(thread);
		exit.cond = makeTrue();
		cfg.exit = addNode(NodeKind::Exit, exit);
		link(frontier, cfg.exit);
		computeRpo();
		return std::move(cfg);
	}

private:
	int addNode(NodeKind kind, Instruction instr)
	{
		CfgNode n;
		n.kind = kind;
		n.instr = std::move(instr);
		n.inLoop = loopDepth > 0;
		cfg.nodes.push_back(std::move(n));
		return static_cast<int>(cfg.nodes.size()) - 1;
	}

	void link(const std::vector<int> &from, int to)
	{
		for (auto f : from) {
			auto &succs = cfg.nodes[f].succs;
			if (std::find(succs.begin(), succs.end(), to) != succs.end())
				continue;
			succs.push_back(to);
			cfg.nodes[to].preds.push_back(f);
		}
	}

	int guard(const std::string &name, BoolExpr cond, const std::vector<int> &from)
	{
		Instruction g;
		g.kind = OpKind::Assume;
		g.label = Label{name, 1};
		g.cond = std::move(cond);
		auto id = addNode(NodeKind::Op, g);
		link(from, id);
		return id;
	}

	std::vector<int> emit(const std::vector<Stmt> &body, std::vector<int> frontier)
	{
		for (const auto &s : body) {
			if (auto *i = std::get_if<Instruction>(&s.node)) {
				auto id = addNode(NodeKind::Op, *i);
				link(frontier, id);
				frontier = {id};
			} else if (auto *f = std::get_if<IfStmt>(&s.node)) {
				auto base = thread.name + ".if" + std::to_string(++ifCount);
				auto t = guard(base + ".then", f->cond, frontier);
				auto e = guard(base + ".else", makeNot(f->cond), frontier);
				auto out = emit(f->thenBody, {t});
				auto outElse = emit(f->elseBody, {e});
				out.insert(out.end(), outElse.begin(), outElse.end());
				frontier = std::move(out);
			} else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
				auto base = thread.name + ".while" + std::to_string(++whileCount);
				++loopDepth;
				auto head = guard(base + ".head", makeTrue(), frontier);
				cfg.nodes[head].loopHeader = true;
				auto bodyEntry = guard(base + ".body", w->cond, {head});
				auto bodyOut = emit(w->body, {bodyEntry});
				for (auto b : bodyOut)
					cfg.backEdges.emplace_back(b, head);
				link(bodyOut, head);
				--loopDepth;
				frontier = {guard(base + ".exit", makeNot(w->cond), {head})};
			}
		}
		return frontier;
	}

	void computeRpo()
	{
		std::vector<char> seen(cfg.nodes.size(), 0);
		std::vector<int> post;
		std::function<void(int)> dfs = [&](int n) {
			seen[n] = 1;
			for (auto s : cfg.nodes[n].succs)
				if (!seen[s])
					dfs(s);
			post.push_back(n);
		};
		dfs(cfg.entry);
		cfg.rpo.assign(post.rbegin(), post.rend());
	}

	const Thread &thread;
	Cfg cfg;
	int ifCount = 0;
	int whileCount = 0;
	int loopDepth = 0;
};

} // namespace

Cfg buildCfg(const Thread &t)
{
	return CfgBuilder(t).build();
}

} // namespace ramosaic
