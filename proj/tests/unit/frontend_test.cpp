// SPDX-License-Identifier: MIT

#include "ramosaic/Error.hpp"
#include "ramosaic/Frontend.hpp"

#include "Fixtures.hpp"

#include <gtest/gtest.h>


using namespace ramosaic;
using testkit::corpusFiles;
using testkit::slurp;

namespace {

const char *MP = R"(
vars x = 0, y = 0;
thread t1 { a: store x 1; b: store y 1; }
thread t2 { c: r1 = load y; d: r2 = load x; }
assert(r1 == 1 => r2 == 1);
)";

std::vector<Instruction> instructions(const Thread &t)
{
	std::vector<Instruction> out;
	forEachInstruction(t.body, [&](const Instruction &i) { out.push_back(i); });
	return out;
}

bool containsWhile(const std::vector<Stmt> &body)
{
	for (const auto &s : body) {
		if (std::holds_alternative<WhileStmt>(s.node))
			return true;
		if (auto *f = std::get_if<IfStmt>(&s.node))
			if (containsWhile(f->thenBody) || containsWhile(f->elseBody))
				return true;
	}
	return false;
}

Label L(const std::string &name, int instance = 1)
{
	return Label{name, instance};
}

} // namespace

TEST(Parse, MessagePassing)
{
	auto p = parse(MP);
	ASSERT_EQ(p.threads.size(), 2u);
	ASSERT_EQ(p.vars.size(), 2u);
	EXPECT_EQ(instructions(p.threads[0]).size() + instructions(p.threads[1]).size(), 4u);
	EXPECT_TRUE(p.postcondition);
	auto t2 = instructions(p.threads[1]);
	EXPECT_EQ(t2[0].kind, OpKind::Load);
	EXPECT_EQ(t2[0].reg, "r1");
	EXPECT_EQ(t2[0].target, "y");
}

TEST(Parse, EmptyThread)
{
	auto p = parse("vars x = 0;\nthread t {}\n");
	ASSERT_EQ(p.threads.size(), 1u);
	EXPECT_TRUE(instructions(p.threads[0]).empty());
	EXPECT_FALSE(p.postcondition);
}

TEST(Parse, DefaultInitializerAndLocks)
{
	auto p = parse("vars x, y = 3;\nlocks m;\nthread t { a: lock m; b: store x 1; c: unlock m; }\n");
	EXPECT_EQ(p.vars[0].init, 0);
	EXPECT_EQ(p.vars[1].init, 3);
	EXPECT_EQ(p.mutexes, std::vector<std::string>{"m"});
}

TEST(Parse, SemanticErrors)
{
	EXPECT_THROW(parse("vars x = 0;\nthread t { a: store x 1; a: store x 2; }\n"), SemanticError);
	EXPECT_THROW(parse("vars x = 0;\nthread t { a: store x 1; }\nthread u { a: store x 2; }\n"), SemanticError);
	EXPECT_THROW(parse("vars x = 0;\nthread t { a: store z 1; }\n"), SemanticError);
	EXPECT_THROW(parse("vars x = 0;\nthread t { a: lock m; }\n"), SemanticError);
}

TEST(Parse, SyntaxErrorPosition)
{
	try {
		parse("vars x = 0;\nthread t {\n  a: store x ;\n}\n");
		FAIL() << "expected a parse error";
	} catch (const ParseError &e) {
		EXPECT_EQ(e.line(), 3);
		EXPECT_EQ(e.col(), 14);
	}
	EXPECT_THROW(parse(""), ParseError);
	EXPECT_THROW(parse("vars x = 0;\n"), ParseError);
}

TEST(Print, RoundTripsTheCorpus)
{
	auto files = corpusFiles();
	ASSERT_FALSE(files.empty());
	for (const auto &f : files) {
		SCOPED_TRACE(f.filename().string());
		auto once = print(parse(slurp(f)));
		EXPECT_EQ(print(parse(once)), once);
	}
}

TEST(Unroll, LoopFreeProgramsAreUnchanged)
{
	for (const auto &f : corpusFiles()) {
		SCOPED_TRACE(f.filename().string());
		auto p = parse(slurp(f));
		ASSERT_FALSE(hasLoops(p));
		EXPECT_EQ(print(unroll(p, 4)), print(p));
	}
}

TEST(Unroll, GuardedCopies)
{
	auto p = parse("vars x = 0;\nthread t { i: r = 0; while (r < 2) { s: store x r; } }\n");
	ASSERT_TRUE(hasLoops(p));
	for (int k = 1; k <= 4; ++k) {
		auto u = unroll(p, k);
		EXPECT_FALSE(hasLoops(u));
		EXPECT_FALSE(containsWhile(u.threads[0].body));
		auto text = print(u);
		EXPECT_EQ(print(parse(text)), text);
	}

	auto u = unroll(p, 2);
	auto ins = instructions(u.threads[0]);
	ASSERT_EQ(ins.size(), 4u);
	EXPECT_EQ(ins[1].label, L("s", 1));
	EXPECT_EQ(ins[2].label, L("s", 2));
	EXPECT_EQ(ins[3].kind, OpKind::Assume);
	EXPECT_EQ(toString(ins[3].cond), toString(makeNot(makeCmp(CmpOp::Lt, makeName("r", 0), makeConst(2)))));

	UnrollOptions opts;
	opts.bound = 2;
	opts.residualTrue = true;
	auto t = instructions(unroll(p, opts).threads[0]);
	EXPECT_EQ(toString(t.back().cond), toString(makeTrue()));
}

TEST(Unroll, InstancesIncreaseAlongPaths)
{
	auto p = parse("vars x = 0;\nthread t { i: r = 0; while (r < 5) { s: r = load x; if (r == 1) { v: store x 2; } } }\n");
	auto u = unroll(p, 3);
	auto cfg = buildCfg(u.threads[0]);
	for (const auto &n : cfg.nodes)
		for (int s : n.succs) {
			const auto &a = n.instr.label, &b = cfg.nodes[s].instr.label;
			if (a.name == b.name) {
				EXPECT_LT(a.instance, b.instance);
			}
		}
	/* also along longer paths: each source label's instances appear in rpo order */
	std::map<std::string, int> last;
	for (int id : cfg.rpo) {
		const auto &l = cfg.nodes[id].instr.label;
		if (last.count(l.name)) {
			EXPECT_LT(last[l.name], l.instance) << l.str();
		}
		last[l.name] = l.instance;
	}
}

TEST(Unroll, SpinLoopBecomesAssume)
{
	auto p = parse("vars y = 0;\nthread t { while (r != 1) { t: r = load y; } }\n");
	UnrollOptions opts;
	opts.spinAssume = true;
	auto ins = instructions(unroll(p, opts).threads[0]);
	ASSERT_EQ(ins.size(), 2u);
	EXPECT_EQ(ins[0].kind, OpKind::Load);
	EXPECT_EQ(ins[0].target, "y");
	EXPECT_EQ(ins[1].kind, OpKind::Assume);
	EXPECT_EQ(toString(ins[1].cond), toString(makeNot(makeCmp(CmpOp::Ne, makeName("r", 0), makeConst(1)))));
}

TEST(PreLabels, ProgramOrder)
{
	auto p = parse(MP);
	EXPECT_EQ(preLabels(p, L("d")), std::set<Label>{L("c")});
	EXPECT_EQ(preLabels(p, L("a")), std::set<Label>{L("t1.entry")});
	EXPECT_EQ(preLabels(p, L("t2.exit")), std::set<Label>{L("d")});
	EXPECT_THROW(preLabels(p, L("zz")), UnknownLabel);
}

TEST(PreLabels, JoinAfterBranch)
{
	auto p = parse("vars x = 0;\n"
	               "thread t { a: r = load x; if (r == 1) { b: store x 2; } else { c: store x 3; d: store x 4; } e: store x 5; }\n");
	EXPECT_EQ(preLabels(p, L("e")), (std::set<Label>{L("b"), L("d")}));
	/* branch heads hang off the synthetic guard nodes */
	EXPECT_EQ(preLabels(p, L("c")), std::set<Label>{L("t.if1.else")});
	EXPECT_EQ(preLabels(p, L("t.if1.else")), std::set<Label>{L("a")});

	auto q = parse("vars x = 0;\nthread t { a: r = load x; if (r == 1) { b: store x 2; } e: store x 5; }\n");
	EXPECT_EQ(preLabels(q, L("e")), (std::set<Label>{L("b"), L("t.if1.else")}));
}
