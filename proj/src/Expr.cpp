// SPDX-License-Identifier: MIT

#include "ramosaic/Expr.hpp"

#include <stdexcept>

namespace ramosaic {

IntExpr makeConst(std::int64_t v)
{
	auto n = std::make_shared<IntNode>();
	n->op = IntOp::Const;
	n->value = v;
	return n;
}

IntExpr makeName(std::string name, int slot)
{
	auto n = std::make_shared<IntNode>();
	n->op = IntOp::Name;
	n->name = std::move(name);
	n->slot = slot;
	return n;
}

IntExpr makeBinary(IntOp op, IntExpr lhs, IntExpr rhs)
{
	auto n = std::make_shared<IntNode>();
	n->op = op;
	n->lhs = std::move(lhs);
	n->rhs = std::move(rhs);
	return n;
}

IntExpr makeNeg(IntExpr e)
{
	auto n = std::make_shared<IntNode>();
	n->op = IntOp::Neg;
	n->lhs = std::move(e);
	return n;
}

static BoolExpr makeBool(BoolOp op)
{
	auto n = std::make_shared<BoolNode>();
	n->op = op;
	return n;
}

BoolExpr makeTrue() { return makeBool(BoolOp::True); }
BoolExpr makeFalse() { return makeBool(BoolOp::False); }

BoolExpr makeCmp(CmpOp op, IntExpr lhs, IntExpr rhs)
{
	auto n = std::make_shared<BoolNode>();
	n->op = BoolOp::Cmp;
	n->cmp = op;
	n->lhs = std::move(lhs);
	n->rhs = std::move(rhs);
	return n;
}

BoolExpr makeAnd(BoolExpr l, BoolExpr r)
{
	auto n = std::make_shared<BoolNode>();
	n->op = BoolOp::And;
	n->left = std::move(l);
	n->right = std::move(r);
	return n;
}

BoolExpr makeOr(BoolExpr l, BoolExpr r)
{
	auto n = std::make_shared<BoolNode>();
	n->op = BoolOp::Or;
	n->left = std::move(l);
	n->right = std::move(r);
	return n;
}

BoolExpr makeNot(BoolExpr e)
{
	auto n = std::make_shared<BoolNode>();
	n->op = BoolOp::Not;
	n->left = std::move(e);
	return n;
}

CmpOp negateCmp(CmpOp op)
{
	switch (op) {
	case CmpOp::Eq: return CmpOp::Ne;
	case CmpOp::Ne: return CmpOp::Eq;
	case CmpOp::Lt: return CmpOp::Ge;
	case CmpOp::Le: return CmpOp::Gt;
	case CmpOp::Gt: return CmpOp::Le;
	case CmpOp::Ge: return CmpOp::Lt;
	}
	return op;
}

BoolExpr toNnf(const BoolExpr &e, bool negate)
{
	switch (e->op) {
	case BoolOp::True: return negate ? makeFalse() : makeTrue();
	case BoolOp::False: return negate ? makeTrue() : makeFalse();
	case BoolOp::Cmp: return makeCmp(negate ? negateCmp(e->cmp) : e->cmp, e->lhs, e->rhs);
	case BoolOp::Not: return toNnf(e->left, !negate);
	case BoolOp::And: {
		auto l = toNnf(e->left, negate);
		auto r = toNnf(e->right, negate);
		return negate ? makeOr(l, r) : makeAnd(l, r);
	}
	case BoolOp::Or: {
		auto l = toNnf(e->left, negate);
		auto r = toNnf(e->right, negate);
		return negate ? makeAnd(l, r) : makeOr(l, r);
	}
	}
	return e;
}

std::string toString(CmpOp op)
{
	switch (op) {
	case CmpOp::Eq: return "==";
	case CmpOp::Ne: return "!=";
	case CmpOp::Lt: return "<";
	case CmpOp::Le: return "<=";
	case CmpOp::Gt: return ">";
	case CmpOp::Ge: return ">=";
	}
	return "?";
}

static bool isAtom(const IntExpr &e)
{
	return e->op == IntOp::Const || e->op == IntOp::Name;
}

static std::string wrapped(const IntExpr &e)
{
	return isAtom(e) ? toString(e) : "(" + toString(e) + ")";
}

std::string toString(const IntExpr &e)
{
	switch (e->op) {
	case IntOp::Const: return std::to_string(e->value);
	case IntOp::Name: return e->name;
	case IntOp::Add: return wrapped(e->lhs) + " + " + wrapped(e->rhs);
	case IntOp::Sub: return wrapped(e->lhs) + " - " + wrapped(e->rhs);
	case IntOp::Mul: return wrapped(e->lhs) + " * " + wrapped(e->rhs);
	case IntOp::Neg: return "-(" + toString(e->lhs) + ")";
	}
	return "?";
}

std::string toString(const BoolExpr &e)
{
	switch (e->op) {
	case BoolOp::True: return "true";
	case BoolOp::False: return "false";
	case BoolOp::Cmp: return toString(e->lhs) + " " + toString(e->cmp) + " " + toString(e->rhs);
	case BoolOp::And: return "(" + toString(e->left) + " && " + toString(e->right) + ")";
	case BoolOp::Or: return "(" + toString(e->left) + " || " + toString(e->right) + ")";
	case BoolOp::Not: return "!(" + toString(e->left) + ")";
	}
	return "?";
}

IntExpr resolve(const IntExpr &e, const SlotResolver &slotOf)
{
	switch (e->op) {
	case IntOp::Const: return e;
	case IntOp::Name: return makeName(e->name, slotOf(e->name));
	case IntOp::Neg: return makeNeg(resolve(e->lhs, slotOf));
	default: return makeBinary(e->op, resolve(e->lhs, slotOf), resolve(e->rhs, slotOf));
	}
}

BoolExpr resolve(const BoolExpr &e, const SlotResolver &slotOf)
{
	switch (e->op) {
	case BoolOp::True:
	case BoolOp::False: return e;
	case BoolOp::Cmp: return makeCmp(e->cmp, resolve(e->lhs, slotOf), resolve(e->rhs, slotOf));
	case BoolOp::Not: return makeNot(resolve(e->left, slotOf));
	case BoolOp::And: return makeAnd(resolve(e->left, slotOf), resolve(e->right, slotOf));
	case BoolOp::Or: return makeOr(resolve(e->left, slotOf), resolve(e->right, slotOf));
	}
	return e;
}

void collectNames(const IntExpr &e, std::set<std::string> &out)
{
	if (!e)
		return;
	if (e->op == IntOp::Name)
		out.insert(e->name);
	collectNames(e->lhs, out);
	collectNames(e->rhs, out);
}

void collectNames(const BoolExpr &e, std::set<std::string> &out)
{
	if (!e)
		return;
	collectNames(e->lhs, out);
	collectNames(e->rhs, out);
	collectNames(e->left, out);
	collectNames(e->right, out);
}

/* Two's complement wraparound keeps the oracle free of UB; intervals
 * saturate to infinity instead, which contains any wrapped value. */
static std::int64_t wrap(unsigned __int128 v)
{
	return static_cast<std::int64_t>(static_cast<std::uint64_t>(v));
}

std::int64_t evalConcrete(const IntExpr &e, const std::function<std::int64_t(int)> &valueOf)
{
	switch (e->op) {
	case IntOp::Const: return e->value;
	case IntOp::Name:
		if (e->slot < 0)
			throw std::logic_error("unresolved name " + e->name);
		return valueOf(e->slot);
	case IntOp::Neg: return wrap(-static_cast<unsigned __int128>(evalConcrete(e->lhs, valueOf)));
	case IntOp::Add:
		return wrap(static_cast<unsigned __int128>(evalConcrete(e->lhs, valueOf)) +
			    static_cast<unsigned __int128>(evalConcrete(e->rhs, valueOf)));
	case IntOp::Sub:
		return wrap(static_cast<unsigned __int128>(evalConcrete(e->lhs, valueOf)) -
			    static_cast<unsigned __int128>(evalConcrete(e->rhs, valueOf)));
	case IntOp::Mul:
		return wrap(static_cast<unsigned __int128>(evalConcrete(e->lhs, valueOf)) *
			    static_cast<unsigned __int128>(evalConcrete(e->rhs, valueOf)));
	}
	return 0;
}

bool evalConcrete(const BoolExpr &e, const std::function<std::int64_t(int)> &valueOf)
{
	switch (e->op) {
	case BoolOp::True: return true;
	case BoolOp::False: return false;
	case BoolOp::Not: return !evalConcrete(e->left, valueOf);
	case BoolOp::And: return evalConcrete(e->left, valueOf) && evalConcrete(e->right, valueOf);
	case BoolOp::Or: return evalConcrete(e->left, valueOf) || evalConcrete(e->right, valueOf);
	case BoolOp::Cmp: {
		auto l = evalConcrete(e->lhs, valueOf);
		auto r = evalConcrete(e->rhs, valueOf);
		switch (e->cmp) {
		case CmpOp::Eq: return l == r;
		case CmpOp::Ne: return l != r;
		case CmpOp::Lt: return l < r;
		case CmpOp::Le: return l <= r;
		case CmpOp::Gt: return l > r;
		case CmpOp::Ge: return l >= r;
		}
	}
	}
	return false;
}

bool structurallyEqual(const IntExpr &a, const IntExpr &b)
{
	if (!a || !b)
		return !a && !b;
	if (a->op != b->op)
		return false;
	switch (a->op) {
	case IntOp::Const: return a->value == b->value;
	case IntOp::Name: return a->name == b->name;
	case IntOp::Neg: return structurallyEqual(a->lhs, b->lhs);
	default: return structurallyEqual(a->lhs, b->lhs) && structurallyEqual(a->rhs, b->rhs);
	}
}

bool structurallyEqual(const BoolExpr &a, const BoolExpr &b)
{
	if (!a || !b)
		return !a && !b;
	if (a->op != b->op)
		return false;
	switch (a->op) {
	case BoolOp::True:
	case BoolOp::False: return true;
	case BoolOp::Cmp:
		return a->cmp == b->cmp && structurallyEqual(a->lhs, b->lhs) &&
		       structurallyEqual(a->rhs, b->rhs);
	case BoolOp::Not: return structurallyEqual(a->left, b->left);
	default: return structurallyEqual(a->left, b->left) && structurallyEqual(a->right, b->right);
	}
}

} // namespace ramosaic
