// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_FRONTEND_HPP
#define RAMOSAIC_FRONTEND_HPP

#include "ramosaic/Program.hpp"

#include <set>
#include <string>
#include <string_view>

namespace ramosaic {

/* Throws ParseError or SemanticError */
Program parse(std::string_view source);

/* Litmus text that parses back to the same program */
std::string print(const Program &p);

struct UnrollOptions {
	int bound = 2;
	/* residual assume(true) instead of assume(!cond) after the last copy */
	bool residualTrue = false;
	/* loops whose body only reads replace themselves by assume(!cond) */
	bool spinAssume = false;
};

Program unroll(const Program &p, int bound);
Program unroll(const Program &p, const UnrollOptions &opts);

/* Immediate CFG predecessors; throws UnknownLabel */
std::set<Label> preLabels(const Program &p, const Label &l);

} // namespace ramosaic

#endif
