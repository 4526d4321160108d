// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_TESTS_GENERATOR_HPP
#define RAMOSAIC_TESTS_GENERATOR_HPP

#include <random>
#include <string>

namespace ramosaic::testkit {

struct GenOptions {
	int maxThreads = 3;
	int maxSharedPerThread = 6;
	int vars = 2;
	bool branches = true;
	bool rmws = true;
	bool locks = true;
	bool inlineAsserts = true;
};

/* Litmus source of a random loop-free program with a postcondition */
std::string randomProgram(std::mt19937_64 &rng, const GenOptions &o = {});

} // namespace ramosaic::testkit

#endif
