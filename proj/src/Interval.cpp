// SPDX-License-Identifier: MIT

#include "ramosaic/Interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace ramosaic {

namespace {

using Wide = __int128;

struct Overflow {};

/* Finite results must stay strictly inside the sentinel range */
std::int64_t narrow(Wide v)
{
	if (v <= Interval::NegInf || v >= Interval::PosInf)
		throw Overflow{};
	return static_cast<std::int64_t>(v);
}

std::int64_t mulExt(std::int64_t a, std::int64_t b)
{
	if (a == 0 || b == 0)
		return 0;
	bool aInf = a == Interval::NegInf || a == Interval::PosInf;
	bool bInf = b == Interval::NegInf || b == Interval::PosInf;
	if (aInf || bInf)
		return ((a < 0) != (b < 0)) ? Interval::NegInf : Interval::PosInf;
	return narrow(static_cast<Wide>(a) * b);
}

std::int64_t negExt(std::int64_t v)
{
	if (v == Interval::NegInf)
		return Interval::PosInf;
	if (v == Interval::PosInf)
		return Interval::NegInf;
	return -v;
}

/* v + d for a small finite d, infinities absorbing */
std::int64_t shift(std::int64_t v, std::int64_t d)
{
	if (v == Interval::NegInf || v == Interval::PosInf)
		return v;
	try {
		return narrow(static_cast<Wide>(v) + d);
	} catch (Overflow &) {
		return d < 0 ? Interval::NegInf : Interval::PosInf;
	}
}

} // namespace

Interval Interval::range(std::int64_t lo, std::int64_t hi)
{
	if (lo > hi || lo == PosInf || hi == NegInf)
		return Interval();
	return Interval(lo, hi);
}

bool Interval::leq(const Interval &o) const
{
	if (empty_)
		return true;
	if (o.empty_)
		return false;
	return o.lo_ <= lo_ && hi_ <= o.hi_;
}

Interval Interval::join(const Interval &o) const
{
	if (empty_)
		return o;
	if (o.empty_)
		return *this;
	return Interval(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
}

Interval Interval::meet(const Interval &o) const
{
	if (empty_ || o.empty_)
		return Interval();
	return range(std::max(lo_, o.lo_), std::min(hi_, o.hi_));
}

Interval Interval::widen(const Interval &o) const
{
	if (empty_)
		return o;
	if (o.empty_)
		return *this;
	return Interval(o.lo_ < lo_ ? NegInf : lo_, o.hi_ > hi_ ? PosInf : hi_);
}

Interval Interval::operator+(const Interval &o) const
{
	if (empty_ || o.empty_)
		return Interval();
	try {
		auto lo = (lo_ == NegInf || o.lo_ == NegInf) ? NegInf : narrow(static_cast<Wide>(lo_) + o.lo_);
		auto hi = (hi_ == PosInf || o.hi_ == PosInf) ? PosInf : narrow(static_cast<Wide>(hi_) + o.hi_);
		return Interval(lo, hi);
	} catch (Overflow &) {
		return top();
	}
}

Interval Interval::operator-() const
{
	if (empty_)
		return Interval();
	return Interval(negExt(hi_), negExt(lo_));
}

Interval Interval::operator-(const Interval &o) const
{
	return *this + (-o);
}

Interval Interval::operator*(const Interval &o) const
{
	if (empty_ || o.empty_)
		return Interval();
	try {
		std::int64_t c[] = {mulExt(lo_, o.lo_), mulExt(lo_, o.hi_), mulExt(hi_, o.lo_), mulExt(hi_, o.hi_)};
		return Interval(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
	} catch (Overflow &) {
		return top();
	}
}

std::string Interval::str() const
{
	if (empty_)
		return "⊥v";
	if (isTop())
		return "⊤v";
	auto bound = [](std::int64_t v) {
		if (v == NegInf)
			return std::string("-oo");
		if (v == PosInf)
			return std::string("+oo");
		return std::to_string(v);
	};
	return "[" + bound(lo_) + "," + bound(hi_) + "]";
}

Interval valJoin(const Interval &a, const Interval &b)
{
	return a.join(b);
}

Interval valWiden(const Interval &a, const Interval &b)
{
	return a.widen(b);
}

bool Memory::anyEmpty() const
{
	return std::any_of(vals_.begin(), vals_.end(), [](const Interval &i) { return i.isEmpty(); });
}

bool Memory::leq(const Memory &o) const
{
	for (std::size_t k = 0; k < vals_.size(); ++k)
		if (!vals_[k].leq(o.vals_[k]))
			return false;
	return true;
}

Memory Memory::join(const Memory &o) const
{
	Memory r = *this;
	for (std::size_t k = 0; k < vals_.size(); ++k)
		r.vals_[k] = vals_[k].join(o.vals_[k]);
	return r;
}

Memory Memory::widen(const Memory &o) const
{
	Memory r = *this;
	for (std::size_t k = 0; k < vals_.size(); ++k)
		r.vals_[k] = vals_[k].widen(o.vals_[k]);
	return r;
}

Interval evalExpr(const IntExpr &e, const Memory &m)
{
	switch (e->op) {
	case IntOp::Const: return Interval::constant(e->value);
	case IntOp::Name:
		if (e->slot < 0 || static_cast<std::size_t>(e->slot) >= m.size())
			throw std::logic_error("unresolved name " + e->name);
		return m[e->slot];
	case IntOp::Add: return evalExpr(e->lhs, m) + evalExpr(e->rhs, m);
	case IntOp::Sub: return evalExpr(e->lhs, m) - evalExpr(e->rhs, m);
	case IntOp::Mul: return evalExpr(e->lhs, m) * evalExpr(e->rhs, m);
	case IntOp::Neg: return -evalExpr(e->lhs, m);
	}
	return Interval::top();
}

/*** Refinement: forward evaluation, then backward narrowing per node ***/

namespace {

bool narrowTo(const IntExpr &e, const Interval &target, Memory &m);

/* Values x with c*x inside target, for a nonzero constant c */
Interval divideBy(const Interval &target, std::int64_t c)
{
	auto floorDiv = [](Wide a, Wide b) {
		Wide q = a / b;
		if ((a % b != 0) && ((a < 0) != (b < 0)))
			--q;
		return q;
	};
	auto ceilDiv = [&](Wide a, Wide b) { return -floorDiv(-a, b); };
	auto t = c < 0 ? -target : target;
	Wide d = c < 0 ? -static_cast<Wide>(c) : c;
	auto lo = t.lo() == Interval::NegInf ? Interval::NegInf
					     : static_cast<std::int64_t>(ceilDiv(t.lo(), d));
	auto hi = t.hi() == Interval::PosInf ? Interval::PosInf
					     : static_cast<std::int64_t>(floorDiv(t.hi(), d));
	return Interval::range(lo, hi);
}

bool narrowTo(const IntExpr &e, const Interval &target, Memory &m)
{
	auto cur = evalExpr(e, m).meet(target);
	if (cur.isEmpty())
		return false;
	switch (e->op) {
	case IntOp::Const: return true;
	case IntOp::Name: m.set(e->slot, cur); return true;
	case IntOp::Neg: return narrowTo(e->lhs, -cur, m);
	case IntOp::Add: {
		auto r = evalExpr(e->rhs, m);
		if (!narrowTo(e->lhs, cur - r, m))
			return false;
		auto l = evalExpr(e->lhs, m);
		return narrowTo(e->rhs, cur - l, m);
	}
	case IntOp::Sub: {
		auto r = evalExpr(e->rhs, m);
		if (!narrowTo(e->lhs, cur + r, m))
			return false;
		auto l = evalExpr(e->lhs, m);
		return narrowTo(e->rhs, l - cur, m);
	}
	case IntOp::Mul: {
		auto l = evalExpr(e->lhs, m);
		auto r = evalExpr(e->rhs, m);
		if (r.isConstant() && r.lo() != 0)
			return narrowTo(e->lhs, divideBy(cur, r.lo()), m);
		if (l.isConstant() && l.lo() != 0)
			return narrowTo(e->rhs, divideBy(cur, l.lo()), m);
		return true;
	}
	}
	return true;
}

Interval atMost(std::int64_t hi) { return Interval::range(Interval::NegInf, hi); }
Interval atLeast(std::int64_t lo) { return Interval::range(lo, Interval::PosInf); }

bool refineCmp(CmpOp op, const IntExpr &lhs, const IntExpr &rhs, Memory &m)
{
	switch (op) {
	case CmpOp::Gt: return refineCmp(CmpOp::Lt, rhs, lhs, m);
	case CmpOp::Ge: return refineCmp(CmpOp::Le, rhs, lhs, m);
	default: break;
	}
	auto l = evalExpr(lhs, m);
	auto r = evalExpr(rhs, m);
	if (l.isEmpty() || r.isEmpty())
		return false;
	switch (op) {
	case CmpOp::Eq: {
		auto both = l.meet(r);
		return narrowTo(lhs, both, m) && narrowTo(rhs, both, m);
	}
	case CmpOp::Le:
		if (!narrowTo(lhs, atMost(r.hi()), m))
			return false;
		return narrowTo(rhs, atLeast(evalExpr(lhs, m).lo()), m);
	case CmpOp::Lt:
		if (!narrowTo(lhs, atMost(shift(r.hi(), -1)), m))
			return false;
		return narrowTo(rhs, atLeast(shift(evalExpr(lhs, m).lo(), 1)), m);
	case CmpOp::Ne: {
		if (l.isConstant() && r.isConstant())
			return l.lo() != r.lo();
		auto trim = [](const Interval &i, std::int64_t c) {
			auto lo = i.lo() == c ? c + 1 : i.lo();
			auto hi = i.hi() == c ? c - 1 : i.hi();
			return Interval::range(lo, hi);
		};
		if (r.isConstant())
			return narrowTo(lhs, trim(l, r.lo()), m);
		if (l.isConstant())
			return narrowTo(rhs, trim(r, l.lo()), m);
		return true;
	}
	default: return true;
	}
}

std::optional<Memory> refineNnf(const Memory &m, const BoolExpr &c)
{
	switch (c->op) {
	case BoolOp::True: return m;
	case BoolOp::False: return std::nullopt;
	case BoolOp::Cmp: {
		auto out = m;
		if (!refineCmp(c->cmp, c->lhs, c->rhs, out) || out.anyEmpty())
			return std::nullopt;
		return out;
	}
	case BoolOp::And: {
		std::optional<Memory> cur = m;
		/* a second sweep lets each conjunct see the other's narrowing */
		for (int pass = 0; pass < 2 && cur; ++pass) {
			cur = refineNnf(*cur, c->left);
			if (cur)
				cur = refineNnf(*cur, c->right);
		}
		return cur;
	}
	case BoolOp::Or: {
		auto a = refineNnf(m, c->left);
		auto b = refineNnf(m, c->right);
		if (!a)
			return b;
		if (!b)
			return a;
		return a->join(*b);
	}
	case BoolOp::Not: return refineNnf(m, toNnf(c));
	}
	return m;
}

} // namespace

std::optional<Memory> refine(const Memory &m, const BoolExpr &cond)
{
	if (m.anyEmpty())
		return std::nullopt;
	return refineNnf(m, toNnf(cond));
}

} // namespace ramosaic
