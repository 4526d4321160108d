// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_EXPR_HPP
#define RAMOSAIC_EXPR_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>

namespace ramosaic {

/* Integer expressions over registers and literals. Trees are immutable and
 * shared; `slot` is filled in by resolve() once names are bound to memory
 * slots. */

enum class IntOp { Const, Name, Add, Sub, Mul, Neg };

struct IntNode;
using IntExpr = std::shared_ptr<const IntNode>;

struct IntNode {
	IntOp op = IntOp::Const;
	std::int64_t value = 0;
	std::string name;
	int slot = -1;
	IntExpr lhs;
	IntExpr rhs;
};

IntExpr makeConst(std::int64_t v);
IntExpr makeName(std::string name, int slot = -1);
IntExpr makeBinary(IntOp op, IntExpr lhs, IntExpr rhs);
IntExpr makeNeg(IntExpr e);

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class BoolOp { True, False, Cmp, And, Or, Not };

struct BoolNode;
using BoolExpr = std::shared_ptr<const BoolNode>;

struct BoolNode {
	BoolOp op = BoolOp::True;
	CmpOp cmp = CmpOp::Eq;
	IntExpr lhs;
	IntExpr rhs;
	BoolExpr left;
	BoolExpr right;
};

BoolExpr makeTrue();
BoolExpr makeFalse();
BoolExpr makeCmp(CmpOp op, IntExpr lhs, IntExpr rhs);
BoolExpr makeAnd(BoolExpr l, BoolExpr r);
BoolExpr makeOr(BoolExpr l, BoolExpr r);
BoolExpr makeNot(BoolExpr e);

CmpOp negateCmp(CmpOp op);

/* Negation normal form: no Not nodes, comparisons flipped, De Morgan applied */
BoolExpr toNnf(const BoolExpr &e, bool negate = false);

std::string toString(const IntExpr &e);
std::string toString(const BoolExpr &e);
std::string toString(CmpOp op);

using SlotResolver = std::function<int(const std::string &)>;

IntExpr resolve(const IntExpr &e, const SlotResolver &slotOf);
BoolExpr resolve(const BoolExpr &e, const SlotResolver &slotOf);

void collectNames(const IntExpr &e, std::set<std::string> &out);
void collectNames(const BoolExpr &e, std::set<std::string> &out);

std::int64_t evalConcrete(const IntExpr &e, const std::function<std::int64_t(int)> &valueOf);
bool evalConcrete(const BoolExpr &e, const std::function<std::int64_t(int)> &valueOf);

bool structurallyEqual(const IntExpr &a, const IntExpr &b);
bool structurallyEqual(const BoolExpr &a, const BoolExpr &b);

} // namespace ramosaic

#endif
