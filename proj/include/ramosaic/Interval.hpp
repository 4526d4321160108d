// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_INTERVAL_HPP
#define RAMOSAIC_INTERVAL_HPP

#include "ramosaic/Expr.hpp"

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ramosaic {

/* Bounds are 64-bit; the extreme values stand for the infinities and any
 * arithmetic result outside the finite range saturates to them. */
class Interval {
public:
	static constexpr std::int64_t NegInf = std::numeric_limits<std::int64_t>::min();
	static constexpr std::int64_t PosInf = std::numeric_limits<std::int64_t>::max();

	Interval() = default; /* empty */

	static Interval empty() { return Interval(); }
	static Interval top() { return Interval(NegInf, PosInf); }
	static Interval constant(std::int64_t v) { return Interval(v, v); }
	static Interval range(std::int64_t lo, std::int64_t hi);

	bool isEmpty() const { return empty_; }
	bool isTop() const { return !empty_ && lo_ == NegInf && hi_ == PosInf; }
	bool isConstant() const { return !empty_ && lo_ == hi_ && lo_ != NegInf && lo_ != PosInf; }
	std::int64_t lo() const { return lo_; }
	std::int64_t hi() const { return hi_; }

	bool contains(std::int64_t v) const { return !empty_ && lo_ <= v && v <= hi_; }
	bool leq(const Interval &o) const;

	Interval join(const Interval &o) const;
	Interval meet(const Interval &o) const;
	Interval widen(const Interval &o) const;

	Interval operator+(const Interval &o) const;
	Interval operator-(const Interval &o) const;
	Interval operator*(const Interval &o) const;
	Interval operator-() const;

	bool operator==(const Interval &o) const = default;
	std::strong_ordering operator<=>(const Interval &o) const = default;

	/* "[lo,hi]", "⊥v", "⊤v" */
	std::string str() const;

private:
	Interval(std::int64_t lo, std::int64_t hi) : empty_(false), lo_(lo), hi_(hi) {}

	bool empty_ = true;
	std::int64_t lo_ = 0;
	std::int64_t hi_ = 0;
};

Interval valJoin(const Interval &a, const Interval &b);
Interval valWiden(const Interval &a, const Interval &b);

/* One interval per memory slot: shared variables first, then registers */
class Memory {
public:
	Memory() = default;
	explicit Memory(std::vector<Interval> vals) : vals_(std::move(vals)) {}

	std::size_t size() const { return vals_.size(); }
	const Interval &operator[](std::size_t slot) const { return vals_[slot]; }
	void set(std::size_t slot, Interval v) { vals_[slot] = v; }

	bool anyEmpty() const;
	bool leq(const Memory &o) const;
	Memory join(const Memory &o) const;
	Memory widen(const Memory &o) const;

	bool operator==(const Memory &o) const = default;
	std::strong_ordering operator<=>(const Memory &o) const = default;

private:
	std::vector<Interval> vals_;
};

Interval evalExpr(const IntExpr &e, const Memory &m);

/* nullopt means the condition is unsatisfiable in m */
std::optional<Memory> refine(const Memory &m, const BoolExpr &cond);

/* The contract transfer functions rely on; a relational domain slots in by
 * satisfying it. */
template <typename D>
concept ValueDomain = requires(const D &a, const D &b, const IntExpr &e, const BoolExpr &c) {
	{ a.join(b) } -> std::same_as<D>;
	{ a.widen(b) } -> std::same_as<D>;
	{ a.leq(b) } -> std::same_as<bool>;
	{ evalExpr(e, a) } -> std::same_as<Interval>;
	{ refine(a, c) } -> std::same_as<std::optional<D>>;
};

static_assert(ValueDomain<Memory>);

} // namespace ramosaic

#endif
