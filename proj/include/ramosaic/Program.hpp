// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_PROGRAM_HPP
#define RAMOSAIC_PROGRAM_HPP

#include "ramosaic/Expr.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ramosaic {

/* (name, instance); straight-line code uses instance 1, unrolled copies
 * count up along the expansion */
struct Label {
	std::string name;
	int instance = 1;

	auto operator<=>(const Label &) const = default;

	/* "a.1" */
	std::string str() const;
};

enum class OpKind { Store, Load, Cas, FetchAdd, Lock, Unlock, Assign, Assume, Assert };

struct Instruction {
	Label label;
	OpKind kind = OpKind::Assume;
	std::string reg;    /* Load, Cas, FetchAdd, Assign */
	std::string target; /* shared variable or mutex */
	IntExpr value;      /* Store value, Cas new value, FetchAdd addend, Assign rhs */
	IntExpr expected;   /* Cas */
	BoolExpr cond;      /* Assume, Assert */
	int line = 0;
};

struct Stmt;

struct IfStmt {
	BoolExpr cond;
	std::vector<Stmt> thenBody;
	std::vector<Stmt> elseBody;
};

struct WhileStmt {
	BoolExpr cond;
	std::vector<Stmt> body;
};

struct Stmt {
	std::variant<Instruction, IfStmt, WhileStmt> node;
};

struct SharedVar {
	std::string name;
	std::int64_t init = 0;
};

struct Thread {
	std::string name;
	std::vector<Stmt> body;
};

struct Program {
	std::vector<SharedVar> vars;
	std::vector<std::string> mutexes;
	std::vector<Thread> threads;
	BoolExpr postcondition; /* null when absent */
};

/*** Control-flow graphs ***/

enum class NodeKind { Entry, Exit, Op };

struct CfgNode {
	NodeKind kind = NodeKind::Op;
	Instruction instr;
	std::vector<int> preds;
	std::vector<int> succs;
	bool loopHeader = false;
	bool inLoop = false;
};

/* Branches become synthetic assume nodes, so every node other than the
 * entry has a well-defined predecessor set. */
struct Cfg {
	std::vector<CfgNode> nodes;
	int entry = 0;
	int exit = 0;
	std::vector<int> rpo;
	std::vector<std::pair<int, int>> backEdges;
};

Cfg buildCfg(const Thread &t);

Label entryLabel(const Thread &t);
Label exitLabel(const Thread &t);

bool hasLoops(const Program &p);

/* Applies fn to every instruction, in program order */
template <typename F>
void forEachInstruction(const std::vector<Stmt> &body, F &&fn)
{
	for (const auto &s : body) {
		if (auto *i = std::get_if<Instruction>(&s.node)) {
			fn(*i);
		} else if (auto *f = std::get_if<IfStmt>(&s.node)) {
			forEachInstruction(f->thenBody, fn);
			forEachInstruction(f->elseBody, fn);
		} else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
			forEachInstruction(w->body, fn);
		}
	}
}

bool isSharedAccess(OpKind k);

} // namespace ramosaic

#endif
