// SPDX-License-Identifier: MIT

#include "ramosaic/Engine.hpp"
#include "ramosaic/Frontend.hpp"

#include "Fixtures.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace ramosaic;
using namespace ramosaic::testkit;

namespace {

const char *Relay = R"(
vars x = 0, y = 0;
thread t0 {
	while (true) {
		a: r = load x;
		b: store y r + 1;
	}
}
thread t1 {
	c: store x 1;
	d: s = load y;
}
assert(s >= 0);
)";

const char *Counter = R"(
vars x = 0;
thread t0 {
	i: r = 0;
	while (true) {
		a: store x r;
		b: r = r + 1;
	}
}
thread t1 { c: s = load x; }
assert(s >= 0);
)";

AnalysisResult resultOf(std::shared_ptr<const Model> m, StateSet states)
{
	AnalysisResult r;
	r.model = std::move(m);
	r.states = std::move(states);
	return r;
}

bool sameResult(const AnalysisResult &a, const AnalysisResult &b)
{
	if (!(a.states == b.states) || a.totalRounds != b.totalRounds || a.effectiveRounds != b.effectiveRounds ||
	    a.widened != b.widened || a.verdicts.size() != b.verdicts.size())
		return false;
	for (std::size_t k = 0; k < a.verdicts.size(); ++k)
		if (a.verdicts[k].name != b.verdicts[k].name || a.verdicts[k].verdict != b.verdicts[k].verdict ||
		    a.verdicts[k].witnesses != b.verdicts[k].witnesses)
			return false;
	return true;
}

} // namespace

TEST(SeqAI, MessagePassingFirstThread)
{
	auto m = modelOf(corpusSource("mp"));
	Engine e(m, {});
	StateSet empty(m->locations().size());
	auto local = e.seqAI(0, empty, e.interferences().threads[0]);
	auto r = resultOf(m, local);
	EXPECT_EQ(dumpAt(r, "a"), std::vector<std::string>{"a.1 | x:{a.1} y:{} | x:[1,1] y:[0,0]"});
	EXPECT_EQ(dumpAt(r, "b"), std::vector<std::string>{"b.1 | x:{a.1} y:{b.1} | x:[1,1] y:[1,1]"});
}

TEST(SeqAI, MessagePassingSecondThreadSeesTheFirst)
{
	auto m = modelOf(corpusSource("mp"));
	Engine e(m, {});
	StateSet empty(m->locations().size());
	auto global = e.seqAI(0, empty, e.interferences().threads[0]);
	auto first = resultOf(m, e.seqAI(1, empty, e.interferences().threads[1]));
	EXPECT_EQ(dumpAt(first, "d"), std::vector<std::string>{"d.1 | x:{} y:{} | x:[0,0] y:[0,0] r1:[0,0] r2:[0,0]"});

	auto second = resultOf(m, e.seqAI(1, global, e.interferences().threads[1]));
	auto d = dumpAt(second, "d");
	EXPECT_NE(std::find(d.begin(), d.end(), "d.1 | x:{a.1} y:{b.1} | x:[1,1] y:[1,1] r1:[1,1] r2:[1,1]"), d.end());
	for (const auto &s : d)
		EXPECT_EQ(s.find("r1:[1,1] r2:[0,0]"), std::string::npos) << s;
}

TEST(SeqAI, FalseAssumeCutsTheRest)
{
	auto m = modelOf("vars x = 0;\nthread t { a: assume(false); b: store x 1; c: r = load x; }\n");
	Engine e(m, {});
	auto r = resultOf(m, e.seqAI(0, StateSet(m->locations().size()), e.interferences().threads[0]));
	EXPECT_TRUE(dumpAt(r, "a").empty());
	EXPECT_TRUE(dumpAt(r, "b").empty());
	EXPECT_TRUE(dumpAt(r, "c").empty());
	EXPECT_TRUE(dumpAt(r, "t.exit").empty());
}

TEST(Tmai, MessagePassing)
{
	auto start = std::chrono::steady_clock::now();
	auto r = analyze(parse(corpusSource("mp")));
	auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	EXPECT_EQ(r.overall(), Verdict::Proved);
	EXPECT_EQ(r.effectiveRounds, 2);
	EXPECT_EQ(r.totalRounds, 3);
	EXPECT_LT(ms, 1000.0);
	auto d = dumpAt(r, "d");
	EXPECT_NE(std::find(d.begin(), d.end(), "d.1 | x:{a.1} y:{b.1} | x:[1,1] y:[1,1] r1:[1,1] r2:[1,1]"), d.end());
}

TEST(Tmai, CoherenceBenchmarks)
{
	for (auto name : {"co_2p2w_5", "co_2p2w_15"}) {
		SCOPED_TRACE(name);
		auto r = analyze(parse(corpusSource(name)));
		EXPECT_EQ(r.overall(), Verdict::Proved);
		EXPECT_LE(r.effectiveRounds, 3);
	}
}

TEST(Tmai, PetersonThreeFindsTheBug)
{
	auto r = analyze(parse(corpusSource("peterson3")));
	EXPECT_EQ(r.overall(), Verdict::PossiblyViolated);
	EXPECT_LE(r.effectiveRounds, 4);
}

TEST(Tmai, RoundsOnlyGrowTheStateSet)
{
	for (const auto &file : corpusFiles()) {
		SCOPED_TRACE(file.filename().string());
		auto m = modelOf(slurp(file));
		Engine e(m, {});
		auto policy = FlagPolicy::of(*m);
		StateSet current(m->locations().size());
		for (int round = 0; round < 10; ++round) {
			StateSet next = current;
			for (ThreadId t = 0; t < static_cast<ThreadId>(m->threads().size()); ++t) {
				auto local = e.seqAI(t, current, e.interferences().threads[t]);
				for (LocId l = 0; l < static_cast<LocId>(local.locations()); ++l)
					for (const auto &s : local.at(l))
						next.merge(s, policy);
			}
			auto probe = next;
			for (LocId l = 0; l < static_cast<LocId>(current.locations()); ++l)
				for (const auto &s : current.at(l))
					ASSERT_FALSE(probe.merge(s, policy)) << "round " << round << ": " << dumpState(s, *m);
			if (next == current)
				break;
			current = std::move(next);
		}
	}
}

TEST(Tmai, Deterministic)
{
	for (const auto &file : corpusFiles()) {
		SCOPED_TRACE(file.filename().string());
		auto p = parse(slurp(file));
		EXPECT_TRUE(sameResult(analyze(p), analyze(p)));
	}
}

TEST(Tmai, WideningTerminatesOnUnboundedLoops)
{
	EngineConfig cfg;
	cfg.unroll.bound = 0;
	auto r = analyze(parse(Counter), cfg);
	EXPECT_EQ(r.overall(), Verdict::Proved);
	EXPECT_FALSE(r.widened.empty());
	auto c = dumpAt(r, "c");
	ASSERT_FALSE(c.empty());
	for (const auto &s : c)
		EXPECT_NE(s.find("s:[0,+oo]"), std::string::npos) << s;

	/* bounded values stay precise through the widened loop */
	auto relay = analyze(parse(Relay), cfg);
	EXPECT_EQ(relay.overall(), Verdict::Proved);
	for (const auto &s : dumpAt(relay, "d"))
		EXPECT_NE(s.find("s:[0,2]"), std::string::npos) << s;
}

TEST(Combinations, AgreesWithPerLoad)
{
	EngineConfig combos;
	combos.mode = EngineMode::Combinations;
	for (auto name : {"mp", "sb", "sb_fen", "red_interf", "co_2p2w_5", "dijkstra_unfenced"}) {
		SCOPED_TRACE(name);
		auto p = parse(corpusSource(name));
		EXPECT_EQ(analyze(p, combos).overall(), analyze(p).overall());
	}
}

TEST(Combinations, ContextOnlyThreadIsSequential)
{
	auto p = parse("vars x = 0;\nthread t { a: store x 3; b: r = load x; c: assert(r == 3); }\n");
	EngineConfig combos;
	combos.mode = EngineMode::Combinations;
	auto a = analyze(p, combos), b = analyze(p);
	EXPECT_TRUE(a.states == b.states);
	EXPECT_EQ(a.overall(), Verdict::Proved);
	EXPECT_EQ(dumpAt(a, "b"), std::vector<std::string>{"b.1 | x:{a.1} | x:[3,3] r:[3,3]"});
}
