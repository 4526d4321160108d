// SPDX-License-Identifier: MIT

#include "Generator.hpp"

#include <vector>

namespace ramosaic::testkit {

namespace {

class Gen {
public:
	Gen(std::mt19937_64 &rng, const GenOptions &o) : rng_(rng), o_(o) {}

	std::string program()
	{
		std::string vars;
		for (int v = 0; v < o_.vars; ++v)
			vars += (v ? ", " : "") + var(v) + " = " + std::to_string(pick(0, 1) ? 0 : pick(0, 2));
		std::string out = "vars " + vars + ";\n";
		useLock_ = o_.locks && pick(0, 3) == 0;
		if (useLock_)
			out += "locks m;\n";
		int threads = pick(2, o_.maxThreads);
		for (int t = 0; t < threads; ++t) {
			thread_ = t;
			shared_ = 0;
			out += "thread t" + std::to_string(t) + " {\n" + body(1, o_.maxSharedPerThread) + "}\n";
		}
		if (!regs_.empty())
			out += "assert(" + cond(regs_) + ");\n";
		return out;
	}

private:
	int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
	static std::string var(int v) { return std::string(1, static_cast<char>('x' + v)); }
	std::string label() { return "l" + std::to_string(labels_++); }
	std::string reg()
	{
		auto r = "r" + std::to_string(thread_) + "_" + std::to_string(regCount_++);
		regs_.push_back(r);
		threadRegs_.push_back(r);
		return r;
	}
	std::string value() { return std::to_string(pick(0, 3)); }

	std::string cond(const std::vector<std::string> &regs)
	{
		auto atom = [&] {
			static const char *ops[] = {"==", "!=", "<", "<=", ">", ">="};
			return regs[pick(0, static_cast<int>(regs.size()) - 1)] + " " + ops[pick(0, 5)] + " " + value();
		};
		switch (pick(0, 3)) {
		case 0: return atom() + " || " + atom();
		case 1: return atom() + " => " + atom();
		case 2: return atom() + " && " + atom();
		default: return atom();
		}
	}

	std::string body(int depth, int budget)
	{
		std::string out;
		std::string ind(depth, '\t');
		if (depth == 1)
			threadRegs_.clear();
		bool locked = false;
		int steps = pick(1, budget);
		for (int i = 0; i < steps && shared_ + reserved_ < o_.maxSharedPerThread; ++i) {
			int k = pick(0, 9);
			if (useLock_ && depth == 1 && k == 0 && !locked && shared_ + 2 <= o_.maxSharedPerThread) {
				out += ind + label() + ": lock m;\n";
				locked = true;
				++shared_;
				++reserved_;
				continue;
			}
			if (k <= 3) {
				auto v = var(pick(0, o_.vars - 1));
				std::string val = value();
				if (!threadRegs_.empty() && pick(0, 3) == 0)
					val = threadRegs_.back() + " + 1";
				out += ind + label() + ": store " + v + " " + val + ";\n";
				++shared_;
			} else if (k <= 6) {
				out += ind + label() + ": " + reg() + " = load " + var(pick(0, o_.vars - 1)) + ";\n";
				++shared_;
			} else if (k == 7 && o_.rmws) {
				auto v = var(pick(0, o_.vars - 1));
				if (pick(0, 1))
					out += ind + label() + ": " + reg() + " = cas " + v + " " + value() + " " + value() + ";\n";
				else
					out += ind + label() + ": " + reg() + " = fadd " + v + " 1;\n";
				++shared_;
			} else if (k == 8 && o_.branches && depth < 3 && !threadRegs_.empty()) {
				auto regs = threadRegs_;
				auto saved = threadRegs_;
				auto c = cond(regs);
				auto thenPart = body(depth + 1, 2);
				threadRegs_ = saved;
				std::string elsePart;
				if (pick(0, 1))
					elsePart = body(depth + 1, 2);
				threadRegs_ = saved;
				out += ind + "if (" + c + ") {\n" + thenPart + ind + "}";
				if (!elsePart.empty())
					out += " else {\n" + elsePart + ind + "}";
				out += "\n";
			} else if (k == 9 && !threadRegs_.empty()) {
				if (o_.inlineAsserts && pick(0, 1))
					out += ind + label() + ": assert(" + cond(threadRegs_) + ");\n";
				else
				{
					auto src = threadRegs_.front();
					out += ind + label() + ": " + reg() + " = " + src + " + " + value() + ";\n";
				}
			}
		}
		if (locked) {
			out += ind + label() + ": unlock m;\n";
			++shared_;
			--reserved_;
		}
		return out;
	}

	std::mt19937_64 &rng_;
	GenOptions o_;
	bool useLock_ = false;
	int thread_ = 0;
	int shared_ = 0;
	int reserved_ = 0; /* pending unlock */
	int labels_ = 0;
	int regCount_ = 0;
	std::vector<std::string> regs_;
	std::vector<std::string> threadRegs_;
};

} // namespace

std::string randomProgram(std::mt19937_64 &rng, const GenOptions &o)
{
	return Gen(rng, o).program();
}

} // namespace ramosaic::testkit
