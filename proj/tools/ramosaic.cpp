// SPDX-License-Identifier: MIT

#include "ramosaic/Error.hpp"
#include "ramosaic/Report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ramosaic;

namespace {

struct Options {
	int unroll = 2;
	int widenAfter = 3;
	std::string mode = "per-load";
	bool noPrune = false;
	bool abstractMo = true;
	bool rmwCritical = true;
	bool spinAssume = false;
	bool residualTrue = false;
	bool dumpStates = false;
	bool json = false;
	bool oracleCheck = false;
	std::size_t maxIterations = 1000;
};

void addAnalysisFlags(CLI::App &app, Options &o)
{
	app.add_option("--unroll", o.unroll, "loop unrolling bound, 0 analyzes loops with widening")
		->check(CLI::NonNegativeNumber);
	app.add_option("--widen-after", o.widenAfter, "visits before widening fires")->check(CLI::PositiveNumber);
	app.add_option("--mode", o.mode, "per-load or combinations")
		->check(CLI::IsMember({"per-load", "combinations"}));
	app.add_flag("--no-prune", o.noPrune, "keep combinations the feasibility rules reject");
	app.add_flag("--abstract-mo,!--no-abstract-mo", o.abstractMo, "forget sb-older stores in posets");
	app.add_flag("--rmw-critical,!--no-rmw-critical", o.rmwCritical, "treat rmw, lock and unlock as critical");
	app.add_flag("--spin-assume", o.spinAssume, "replace read-only loops with an assume");
	app.add_flag("--residual-true", o.residualTrue, "end unrolled loops with assume(true)");
	app.add_flag("--json", o.json, "machine-readable output");
	app.add_flag("--oracle-check", o.oracleCheck, "cross-check against exhaustive RA enumeration");
	app.add_option("--max-iterations", o.maxIterations, "outer round cap")->check(CLI::PositiveNumber);
}

EngineConfig configOf(const Options &o)
{
	EngineConfig c;
	c.unroll.bound = o.unroll;
	c.unroll.spinAssume = o.spinAssume;
	c.unroll.residualTrue = o.residualTrue;
	c.transfer.wideningThreshold = o.widenAfter;
	c.transfer.mode = o.abstractMo ? MoMode::Abstract : MoMode::Concrete;
	c.transfer.rmwCritical = o.rmwCritical;
	c.mode = o.mode == "combinations" ? EngineMode::Combinations : EngineMode::PerLoad;
	c.prune = !o.noPrune;
	c.maxIterations = o.maxIterations;
	return c;
}

int analyzeFile(const std::string &file, const Options &o)
{
	try {
		auto r = runFile(file, configOf(o), o.oracleCheck);
		if (o.json) {
			auto j = toJson(r);
			if (o.dumpStates)
				j["dump"] = dumpStates(r.result);
			std::cout << j.dump(2) << "\n";
		} else {
			std::cout << summary(r);
			if (o.dumpStates)
				std::cout << dumpStates(r.result);
		}
		if (r.soundness && !r.soundness->ok())
			return 3;
		return r.result.overall() == Verdict::Proved ? 0 : 1;
	} catch (const ParseError &e) {
		std::cerr << file << ":" << e.line() << ":" << e.col() << ": " << e.what() << "\n";
		return 2;
	} catch (const SemanticError &e) {
		std::cerr << file << ": " << e.what() << "\n";
		return 2;
	} catch (const AnalysisError &e) {
		std::cerr << file << ": " << e.what() << "\n";
		return 2;
	} catch (const InputError &e) {
		std::cerr << "ramosaic: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << file << ": " << e.what() << "\n";
		return 3;
	}
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Thread-modular abstract interpreter for release-acquire litmus programs", "ramosaic"};
	Options o;
	std::string file;
	std::string dir;
	addAnalysisFlags(app, o);
	app.add_flag("--dump-states", o.dumpStates, "print every fixpoint state");
	app.add_option("file", file, "litmus file");
	auto *bench = app.add_subcommand("bench", "run a directory of litmus files against their expectations");
	bench->add_option("dir", dir, "corpus directory")->required();
	bench->fallthrough();
	app.require_subcommand(0, 1);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		return app.exit(e) == 0 ? 0 : 2;
	}

	if (*bench)
		return runBench(dir, configOf(o), o.json, o.oracleCheck, std::cout, std::cerr);
	if (file.empty()) {
		std::cerr << app.help();
		return 2;
	}
	return analyzeFile(file, o);
}
