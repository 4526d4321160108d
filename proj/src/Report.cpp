// SPDX-License-Identifier: MIT

#include "ramosaic/Report.hpp"
#include "ramosaic/Error.hpp"
#include "ramosaic/Frontend.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

namespace ramosaic {

std::optional<Verdict> expectedVerdict(std::string_view source)
{
	static const std::regex re(R"(#\s*expect:\s*(proved|violated))");
	std::match_results<std::string_view::const_iterator> m;
	if (!std::regex_search(source.begin(), source.end(), m, re))
		return std::nullopt;
	return m[1] == "proved" ? Verdict::Proved : Verdict::PossiblyViolated;
}

std::string readFile(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw InputError("cannot read '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

RunReport runSource(const std::string &name, const std::string &source, const EngineConfig &cfg, bool oracleCheck)
{
	RunReport r;
	r.file = name;
	r.config = cfg;
	r.expected = expectedVerdict(source);
	auto program = parse(source);
	auto start = std::chrono::steady_clock::now();
	r.result = analyze(program, cfg);
	r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	if (oracleCheck) {
		try {
			auto oracle = enumerate(*r.result.model);
			r.soundness = checkSoundness(oracle, r.result);
		} catch (const TooLarge &e) {
			r.oracleSkipped = e.what();
		}
	}
	return r;
}

RunReport runFile(const std::string &path, const EngineConfig &cfg, bool oracleCheck)
{
	return runSource(std::filesystem::path(path).filename().string(), readFile(path), cfg, oracleCheck);
}

nlohmann::json toJson(const EngineConfig &cfg)
{
	return {
		{"unroll", cfg.unroll.bound},
		{"spin_assume", cfg.unroll.spinAssume},
		{"residual_true", cfg.unroll.residualTrue},
		{"widen_after", cfg.transfer.wideningThreshold},
		{"mode", cfg.mode == EngineMode::PerLoad ? "per-load" : "combinations"},
		{"prune", cfg.prune},
		{"abstract_mo", cfg.transfer.mode == MoMode::Abstract},
		{"rmw_critical", cfg.transfer.rmwCritical},
		{"max_iterations", cfg.maxIterations},
	};
}

nlohmann::json toJson(const RunReport &r, bool withTiming)
{
	nlohmann::json j;
	j["file"] = r.file;
	j["verdict"] = toString(r.result.overall());
	j["expected"] = r.expected ? nlohmann::json(toString(*r.expected)) : nlohmann::json();
	auto &as = j["assertions"] = nlohmann::json::array();
	for (const auto &v : r.result.verdicts)
		as.push_back({{"name", v.name}, {"verdict", toString(v.verdict)}, {"witnesses", v.witnesses.size()}});
	j["rounds"] = {{"total", r.result.totalRounds}, {"effective", r.result.effectiveRounds}};
	j["widened"] = r.result.widened;
	auto &states = j["states"] = nlohmann::json::object();
	const auto &m = *r.result.model;
	for (LocId l = 0; l < static_cast<LocId>(m.locations().size()); ++l)
		states[m.locations()[l].name] = r.result.states.at(l).size();
	j["config"] = toJson(r.config);
	if (r.soundness)
		j["soundness"] = {{"ok", r.soundness->ok()}, {"problems", r.soundness->problems}};
	else if (!r.oracleSkipped.empty())
		j["soundness"] = {{"skipped", r.oracleSkipped}};
	if (withTiming)
		j["elapsed_ms"] = r.elapsedMs;
	return j;
}

std::string summary(const RunReport &r)
{
	std::ostringstream os;
	os << r.file << ": " << toString(r.result.overall()) << " (rounds " << r.result.totalRounds << ", effective "
	   << r.result.effectiveRounds << ")\n";
	for (const auto &v : r.result.verdicts) {
		os << "  " << v.name << ": " << toString(v.verdict);
		if (!v.witnesses.empty())
			os << ", " << v.witnesses.size() << " witness" << (v.witnesses.size() == 1 ? "" : "es");
		os << "\n";
	}
	if (r.soundness) {
		os << "  oracle check: " << (r.soundness->ok() ? "sound" : "UNSOUND") << "\n";
		for (const auto &p : r.soundness->problems)
			os << "    " << p << "\n";
	} else if (!r.oracleSkipped.empty()) {
		os << "  oracle check: skipped, " << r.oracleSkipped << "\n";
	}
	return os.str();
}

std::string dumpStates(const AnalysisResult &r)
{
	std::ostringstream os;
	const auto &m = *r.model;
	for (LocId l = 0; l < static_cast<LocId>(m.locations().size()); ++l)
		for (const auto &s : r.states.at(l))
			os << dumpState(s, m) << "\n";
	return os.str();
}

int runBench(const std::string &dir, const EngineConfig &cfg, bool json, bool oracleCheck, std::ostream &out,
             std::ostream &err)
{
	namespace fs = std::filesystem;
	if (!fs::is_directory(dir)) {
		err << "ramosaic: '" << dir << "' is not a directory\n";
		return 2;
	}
	std::vector<fs::path> files;
	for (const auto &e : fs::directory_iterator(dir))
		if (e.is_regular_file() && e.path().extension() == ".lit")
			files.push_back(e.path());
	std::sort(files.begin(), files.end());

	int mismatches = 0;
	auto rows = nlohmann::json::array();
	if (!json)
		out << std::left << std::setw(28) << "file" << std::setw(10) << "expected" << std::setw(10) << "verdict"
		    << std::setw(6) << "eff" << std::setw(6) << "total" << std::setw(10) << "ms"
		    << "status\n";
	for (const auto &f : files) {
		auto name = f.filename().string();
		try {
			auto r = runFile(f.string(), cfg, oracleCheck);
			bool match = !r.expected || *r.expected == r.result.overall();
			bool sound = !r.soundness || r.soundness->ok();
			if (!match || !sound) {
				++mismatches;
				err << name << ": " << (match ? "oracle check failed" : "verdict does not match expectation") << "\n";
				if (r.soundness)
					for (const auto &p : r.soundness->problems)
						err << "  " << p << "\n";
			}
			if (json) {
				rows.push_back(toJson(r));
				continue;
			}
			std::ostringstream ms;
			ms << std::fixed << std::setprecision(2) << r.elapsedMs;
			out << std::left << std::setw(28) << name << std::setw(10) << (r.expected ? toString(*r.expected) : "-")
			    << std::setw(10) << toString(r.result.overall()) << std::setw(6) << r.result.effectiveRounds
			    << std::setw(6) << r.result.totalRounds << std::setw(10) << ms.str()
			    << (match && sound ? "ok" : "MISMATCH") << "\n";
		} catch (const std::exception &e) {
			++mismatches;
			err << name << ": " << e.what() << "\n";
			if (json)
				rows.push_back({{"file", name}, {"error", e.what()}});
			else
				out << std::left << std::setw(28) << name << "error\n";
		}
	}
	if (json)
		out << rows.dump(2) << "\n";
	return mismatches ? 1 : 0;
}

} // namespace ramosaic
