// SPDX-License-Identifier: MIT

#include "ramosaic/Error.hpp"
#include "ramosaic/Frontend.hpp"
#include "ramosaic/Model.hpp"
#include "ramosaic/Oracle.hpp"
#include "ramosaic/Report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ramosaic;

int main(int argc, char **argv)
{
	CLI::App app{"Exhaustive release-acquire execution enumerator", "ra-oracle"};
	std::string file;
	int unrollBound = 2;
	bool outcomes = false;
	bool check = false;
	std::size_t guard = 18;
	app.add_option("file", file, "litmus file")->required();
	app.add_flag("--outcomes", outcomes, "print the final register valuations");
	app.add_flag("--validate", check, "re-check every execution against the RA axioms");
	app.add_option("--unroll", unrollBound, "loop unrolling bound")->check(CLI::PositiveNumber);
	app.add_option("--guard", guard, "shared-memory instruction limit");
	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		return app.exit(e) == 0 ? 0 : 2;
	}

	try {
		auto p = parse(readFile(file));
		if (hasLoops(p))
			p = unroll(p, unrollBound);
		auto m = Model::build(p);
		auto r = enumerate(m, OracleOptions{guard});
		if (check) {
			for (const auto &x : r.executions) {
				auto why = validate(m, x);
				if (!why.empty()) {
					std::cerr << "invalid execution: " << why << "\n";
					return 3;
				}
			}
		}
		if (outcomes) {
			for (const auto &line : formatOutcomes(m, r))
				std::cout << line << "\n";
		} else {
			std::cout << r.executions.size() << " executions, " << r.outcomes.size() << " outcomes\n";
			std::cout << "postcondition: " << (r.finalViolated ? "violated" : "holds") << "\n";
			for (auto loc : r.assertViolations)
				std::cout << "assert " << m.locations()[loc].name << ": violated\n";
		}
		return r.finalViolated || !r.assertViolations.empty() ? 1 : 0;
	} catch (const ParseError &e) {
		std::cerr << file << ":" << e.line() << ":" << e.col() << ": " << e.what() << "\n";
		return 2;
	} catch (const SemanticError &e) {
		std::cerr << file << ": " << e.what() << "\n";
		return 2;
	} catch (const InputError &e) {
		std::cerr << "ra-oracle: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << file << ": " << e.what() << "\n";
		return 3;
	}
}
