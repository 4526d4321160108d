// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_EVENTS_HPP
#define RAMOSAIC_EVENTS_HPP

#include "ramosaic/Program.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ramosaic {

using EventId = int;
using VarId = int;
using ThreadId = int;

enum class EventKind { Store, Rmw, Lock, Unlock };

struct Event {
	Label label;
	ThreadId thread = 0;
	EventKind kind = EventKind::Store;
	VarId var = 0;
};

class EventTable {
public:
	EventId add(Event e);

	const Event &operator[](EventId id) const { return events_[id]; }
	std::size_t size() const { return events_.size(); }
	std::string name(EventId id) const { return events_[id].label.str(); }

private:
	std::vector<Event> events_;
};

/* Square boolean matrix, rows packed in 64-bit words */
class BitMatrix {
public:
	BitMatrix() = default;
	explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

	std::size_t size() const { return n_; }
	bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
	void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t(1) << (c % 64); }

	/* row r |= row s */
	void orRow(std::size_t r, std::size_t s);

	void transitiveClose();

private:
	std::size_t n_ = 0;
	std::size_t words_ = 0;
	std::vector<std::uint64_t> bits_;
};

/* Same-thread, same-variable program order between events. `precedes` is
 * strict may-precede (CFG reachability); `dominates` is strict
 * must-precede. Critical events are exempt from forgetting. */
class SbIndex {
public:
	SbIndex() = default;
	explicit SbIndex(std::size_t events) : may_(events), must_(events), critical_(events, 0) {}

	void addPrecedes(EventId a, EventId b) { may_.set(a, b); }
	void addDominates(EventId a, EventId b) { must_.set(a, b); }
	void setCritical(EventId e, bool c = true) { critical_[e] = c; }

	bool precedes(EventId a, EventId b) const { return inRange(a, b) && may_.get(a, b); }
	bool dominates(EventId a, EventId b) const { return inRange(a, b) && must_.get(a, b); }
	bool isCritical(EventId e) const { return e >= 0 && static_cast<std::size_t>(e) < critical_.size() && critical_[e]; }

	/* reflexive sb */
	bool sb(EventId a, EventId b) const { return a == b || precedes(a, b); }

private:
	bool inRange(EventId a, EventId b) const
	{
		return a >= 0 && b >= 0 && static_cast<std::size_t>(a) < may_.size() &&
		       static_cast<std::size_t>(b) < may_.size();
	}

	BitMatrix may_;
	BitMatrix must_;
	std::vector<char> critical_;
};

} // namespace ramosaic

#endif
