// SPDX-License-Identifier: MIT

#include "ramosaic/Events.hpp"

namespace ramosaic {

EventId EventTable::add(Event e)
{
	events_.push_back(std::move(e));
	return static_cast<EventId>(events_.size()) - 1;
}

void BitMatrix::orRow(std::size_t r, std::size_t s)
{
	for (std::size_t w = 0; w < words_; ++w)
		bits_[r * words_ + w] |= bits_[s * words_ + w];
}

void BitMatrix::transitiveClose()
{
	for (std::size_t k = 0; k < n_; ++k)
		for (std::size_t i = 0; i < n_; ++i)
			if (get(i, k))
				orRow(i, k);
}

} // namespace ramosaic
