// SPDX-License-Identifier: MIT
//
// One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include "ramosaic/Engine.hpp"
#include "ramosaic/Frontend.hpp"
#include "ramosaic/Interference.hpp"
#include "ramosaic/Oracle.hpp"
#include "ramosaic/Report.hpp"

#include "Fixtures.hpp"
#include "Laws.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ramosaic;
using namespace ramosaic::testkit;

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t)
{
	return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Outcome {
	bool pass = false;
	std::string detail;
};

AnalysisResult run(const std::string &name, EngineConfig cfg = {})
{
	return analyze(parse(corpusSource(name)), cfg);
}

std::string rounds(const AnalysisResult &r)
{
	return std::string(toString(r.overall())) + " in " + std::to_string(r.effectiveRounds) + "/" +
	       std::to_string(r.totalRounds) + " rounds";
}

std::string firstOf(const std::vector<std::string> &v)
{
	return v.empty() ? "" : v.front().substr(0, v.front().find('\n'));
}

Outcome messagePassing()
{
	auto t = Clock::now();
	auto r = run("mp");
	auto ms = msSince(t);
	std::ostringstream os;
	os << rounds(r) << ", " << ms << " ms";
	return {r.overall() == Verdict::Proved && r.totalRounds <= 3 && ms < 1000, os.str()};
}

Outcome iterationCounts()
{
	auto co5 = run("co_2p2w_5"), co15 = run("co_2p2w_15"), p3 = run("peterson3");
	bool ok = co5.overall() == Verdict::Proved && co5.effectiveRounds <= 3 && co15.overall() == Verdict::Proved &&
	          co15.effectiveRounds <= 3 && p3.overall() == Verdict::PossiblyViolated && p3.effectiveRounds <= 4;
	return {ok, "co-2+2w(5) " + rounds(co5) + "; co-2+2w(15) " + rounds(co15) + "; peterson3 " + rounds(p3)};
}

Outcome bugHunting()
{
	bool ok = true;
	std::string detail;
	for (auto name : {"dijkstra_unfenced", "nr1w"}) {
		auto r = run(name);
		ok = ok && r.overall() == Verdict::PossiblyViolated;
		detail += std::string(name) + " " + toString(r.overall()) + "; ";
	}
	EngineConfig loose;
	loose.transfer.rmwCritical = false;
	int flipped = 0;
	for (auto name : {"dijkstra_fen", "burns_fen", "sb_fen"}) {
		auto strict = run(name).overall(), relaxed = run(name, loose).overall();
		ok = ok && strict == Verdict::Proved;
		if (relaxed == Verdict::PossiblyViolated && strict == Verdict::Proved)
			++flipped;
		detail += std::string(name) + " " + toString(strict) + "/" + toString(relaxed) + "; ";
	}
	detail += std::to_string(flipped) + " flipped by the rmw-critical flag";
	return {ok && flipped > 0, detail};
}

Outcome soundnessFuzz()
{
	auto t = Clock::now();
	auto s = fuzzSoundness(20261014, 200);
	auto ms = msSince(t);
	std::ostringstream os;
	os << s.programs << " programs, " << s.skipped << " skipped, " << s.oracleViolations << " violating, "
	   << s.falsePositives << " false positives, " << s.problems.size() << " problems, " << ms / 1000 << " s";
	if (!s.problems.empty())
		os << "; " << firstOf(s.problems);
	return {s.programs == 200 && s.skipped == 0 && s.problems.empty() && ms < 60000, os.str()};
}

Outcome latticeSuite()
{
	auto bad = latticeLaws(5, 1000);
	return {bad.empty(), std::to_string(bad.size()) + " broken laws over 1000 cases" +
	                         (bad.empty() ? "" : "; " + firstOf(bad))};
}

Outcome galoisSuite()
{
	auto g = galoisLaws(6, 500);
	auto a = alphaSharpLaws(7, 1000);
	auto detail = std::to_string(g.size()) + " Galois failures, " + std::to_string(a.size()) + " α♯ failures over 1000 posets";
	if (!g.empty())
		detail += "; " + firstOf(g);
	if (!a.empty())
		detail += "; " + firstOf(a);
	return {g.empty() && a.empty(), detail};
}

Outcome feasibility()
{
	auto m = modelOf(corpusSource("why_ic"));
	auto combos = feasibleCombinations(*m)[1];
	auto c = nodeOf(*m, "c").node, d = nodeOf(*m, "d").node;
	auto b = eventOf(*m, "b"), a = eventOf(*m, "a");
	bool pruned = std::none_of(combos.begin(), combos.end(), [&](const InterferenceCombination &ic) {
		bool cb = false, da = false;
		for (const auto &[n, s] : ic.choices) {
			cb = cb || (n == c && s && s->event == b);
			da = da || (n == d && s && s->event == a);
		}
		return cb && da;
	});
	EngineConfig combosMode;
	combosMode.mode = EngineMode::Combinations;
	auto proved = run("why_ic", combosMode).overall() == Verdict::Proved;

	int programs = 0;
	std::vector<std::string> bad;
	for (const auto &file : corpusFiles()) {
		auto fm = modelOf(slurp(file));
		if (fm->sharedEventCount() > OracleOptions{}.guard)
			continue;
		++programs;
		for (auto &p : pruningKeepsRealizable(*fm))
			bad.push_back(file.filename().string() + ": " + p);
	}
	std::string detail = std::string("why-ic c<-b,d<-a ") + (pruned ? "pruned" : "kept") + ", " +
	                     (proved ? "proved" : "not proved") + "; " + std::to_string(programs) + " corpus programs, " +
	                     std::to_string(bad.size()) + " realizable rf lost";
	if (!bad.empty())
		detail += "; " + firstOf(bad);
	return {pruned && proved && bad.empty() && programs > 0, detail};
}

Outcome imprecisionWitness()
{
	auto r = run("branch_join");
	auto o = enumerate(*r.model);
	auto rep = checkSoundness(o, r);
	bool safe = !o.finalViolated && o.assertViolations.empty();
	std::string detail = std::string("oracle ") + (safe ? "safe" : "violated") + ", analyzer " + toString(r.overall()) +
	                     ", soundness " + (rep.ok() ? "clean" : firstOf(rep.problems));
	return {safe && r.overall() == Verdict::PossiblyViolated && rep.ok(), detail};
}

Outcome determinism()
{
	int files = 0;
	std::vector<std::string> differing;
	for (const auto &file : corpusFiles()) {
		++files;
		auto first = toJson(runFile(file.string(), {}), false).dump();
		for (int k = 0; k < 2; ++k)
			if (toJson(runFile(file.string(), {}), false).dump() != first) {
				differing.push_back(file.filename().string());
				break;
			}
	}
	std::string detail = std::to_string(files) + " files, 3 runs each, " + std::to_string(differing.size()) + " differ";
	if (!differing.empty())
		detail += ": " + differing.front();
	return {differing.empty() && files > 0, detail};
}

} // namespace

int main()
{
	const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
	    {"mp-verification", messagePassing},      {"iteration-counts", iterationCounts},
	    {"bug-hunting", bugHunting},              {"oracle-soundness-fuzz", soundnessFuzz},
	    {"lattice-laws", latticeSuite},           {"galois-abstraction", galoisSuite},
	    {"feasibility-rules", feasibility},       {"imprecision-witness", imprecisionWitness},
	    {"determinism", determinism},
	};
	int failures = 0;
	for (std::size_t k = 0; k < criteria.size(); ++k) {
		Outcome o;
		try {
			o = criteria[k].second();
		} catch (const std::exception &e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failures += !o.pass;
		std::cout << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first << ": " << o.detail
		          << std::endl;
	}
	return failures == 0 ? 0 : 1;
}
