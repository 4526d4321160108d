// SPDX-License-Identifier: MIT

#include "ramosaic/Engine.hpp"
#include "ramosaic/Error.hpp"
#include "ramosaic/Frontend.hpp"
#include "ramosaic/Oracle.hpp"

#include "Fixtures.hpp"
#include "Generator.hpp"
#include "Laws.hpp"

#include <gtest/gtest.h>

using namespace ramosaic;
using namespace ramosaic::testkit;

namespace {

std::vector<std::string> outcomesOf(const std::string &src)
{
	auto m = modelOf(src);
	return formatOutcomes(*m, enumerate(*m));
}

std::set<std::vector<std::string>> losetNames(const Model &m, const OracleResult &r, const std::string &var)
{
	std::set<std::vector<std::string>> out;
	for (const auto &group : losetsOf(r, varOf(m, var)))
		for (const auto &l : group.losets) {
			std::vector<std::string> names;
			for (auto e : l)
				names.push_back(m.events().name(e));
			out.insert(names);
		}
	return out;
}

const char *TwoPlusTwoW = R"(
vars x = 0, y = 0;
thread t1 { a: store x 1; b: store y 2; }
thread t2 { c: store y 1; d: store x 2; }
)";

} // namespace

TEST(Oracle, MessagePassingOutcomes)
{
	EXPECT_EQ(outcomesOf(corpusSource("mp")), (std::vector<std::string>{"r1=0 r2=0", "r1=0 r2=1", "r1=1 r2=1"}));
}

TEST(Oracle, StoreBufferingAllowsBothZero)
{
	auto out = outcomesOf(corpusSource("sb"));
	EXPECT_NE(std::find(out.begin(), out.end(), "r1=0 r2=0"), out.end());
	EXPECT_EQ(out.size(), 4u);
}

TEST(Oracle, SingleThread)
{
	auto m = modelOf("vars x = 0;\nthread t { a: store x 1; b: r = load x; }\n");
	auto r = enumerate(*m);
	EXPECT_EQ(r.executions.size(), 1u);
	EXPECT_EQ(formatOutcomes(*m, r), std::vector<std::string>{"r=1"});
}

TEST(Oracle, ModificationOrders)
{
	auto mp = modelOf(corpusSource("mp"));
	EXPECT_EQ(losetNames(*mp, enumerate(*mp), "x"), (std::set<std::vector<std::string>>{{"a.1"}}));

	auto w = modelOf(TwoPlusTwoW);
	auto rw = enumerate(*w);
	EXPECT_EQ(losetNames(*w, rw, "x"), (std::set<std::vector<std::string>>{{"a.1", "d.1"}, {"d.1", "a.1"}}));

	auto hb = modelOf("vars x = 0, f = 0;\nthread t1 { a: store x 1; b: store f 1; }\n"
	                  "thread t2 { c: r = load f; d: assume(r == 1); e: store x 2; }\n");
	EXPECT_EQ(losetNames(*hb, enumerate(*hb), "x"), (std::set<std::vector<std::string>>{{"a.1", "e.1"}}));
}

TEST(Oracle, ExecutionsPassTheValidator)
{
	for (const auto &file : corpusFiles()) {
		auto m = modelOf(slurp(file));
		if (m->sharedEventCount() > OracleOptions{}.guard)
			continue;
		SCOPED_TRACE(file.filename().string());
		auto r = enumerate(*m);
		EXPECT_FALSE(r.executions.empty());
		for (const auto &x : r.executions)
			ASSERT_EQ(validate(*m, x), "");
	}
}

TEST(Oracle, ValidatorRejectsIncoherentReads)
{
	auto m = modelOf(corpusSource("mp"));
	auto x = varOf(*m, "x");
	for (auto exec : enumerate(*m).executions) {
		auto &t2 = exec.threads[1];
		if (exec.writes[t2[0].source].thread != 0 || exec.writes[t2[1].source].thread != 0)
			continue;
		/* c reads b, so d may not fall back to the initial x */
		for (std::size_t w = 0; w < exec.writes.size(); ++w)
			if (exec.writes[w].thread == -1 && exec.writes[w].var == x) {
				t2[1].source = static_cast<int>(w);
				t2[1].value = 0;
			}
		EXPECT_NE(validate(*m, exec), "");
		return;
	}
	FAIL() << "no execution where c reads b";
}

TEST(Oracle, GuardRejectsLargePrograms)
{
	auto m = modelOf(corpusSource("peterson3"));
	EXPECT_THROW(enumerate(*m), TooLarge);
	auto loop = modelOf("vars x = 0;\nthread t { while (true) { a: store x 1; } }\n");
	EXPECT_THROW(enumerate(*loop), TooLarge);
}

TEST(Oracle, SoundnessReports)
{
	auto check = [](const std::string &name) {
		auto r = analyze(parse(corpusSource(name)));
		auto o = enumerate(*r.model);
		return std::make_tuple(checkSoundness(o, r), o.finalViolated || !o.assertViolations.empty(), r.overall());
	};
	{
		auto [rep, violated, verdict] = check("mp");
		EXPECT_TRUE(rep.ok());
		EXPECT_FALSE(violated);
		EXPECT_EQ(verdict, Verdict::Proved);
	}
	{
		auto [rep, violated, verdict] = check("dijkstra_unfenced");
		EXPECT_TRUE(rep.ok());
		EXPECT_TRUE(violated);
		EXPECT_EQ(verdict, Verdict::PossiblyViolated);
	}
	{
		/* two branch conditions merged into one state: sound but imprecise */
		auto [rep, violated, verdict] = check("branch_join");
		EXPECT_TRUE(rep.ok());
		EXPECT_FALSE(violated);
		EXPECT_EQ(verdict, Verdict::PossiblyViolated);
	}
}

TEST(Oracle, CorpusIsCoveredByTheAnalysis)
{
	for (const auto &file : corpusFiles()) {
		auto p = parse(slurp(file));
		auto r = analyze(p);
		if (r.model->sharedEventCount() > OracleOptions{}.guard)
			continue;
		SCOPED_TRACE(file.filename().string());
		auto rep = checkSoundness(enumerate(*r.model), r);
		EXPECT_TRUE(rep.ok()) << rep.problems.front();
	}
}

TEST(Oracle, RandomProgramsAreCovered)
{
	auto s = fuzzSoundness(41, 50);
	EXPECT_TRUE(s.problems.empty()) << s.problems.front();
	EXPECT_EQ(s.programs, 50);
	EXPECT_GT(s.oracleViolations, 0);
}

TEST(Generator, RespectsTheSizeBounds)
{
	std::mt19937_64 rng(42);
	GenOptions o;
	for (int i = 0; i < 1000; ++i) {
		auto src = randomProgram(rng, o);
		auto m = modelOf(src);
		ASSERT_LE(m->threads().size(), static_cast<std::size_t>(o.maxThreads));
		for (const auto &t : m->threads()) {
			int shared = 0;
			for (const auto &n : t.cfg.nodes)
				shared += n.kind == NodeKind::Op && isSharedAccess(n.instr.kind);
			ASSERT_LE(shared, o.maxSharedPerThread) << src;
		}
	}
}
