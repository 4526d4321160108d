// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_REPORT_HPP
#define RAMOSAIC_REPORT_HPP

#include "ramosaic/Engine.hpp"
#include "ramosaic/Oracle.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace ramosaic {

struct RunReport {
	std::string file;
	EngineConfig config;
	AnalysisResult result;
	double elapsedMs = 0;
	std::optional<Verdict> expected;
	std::optional<SoundnessReport> soundness;
	std::string oracleSkipped; /* set when the program exceeds the oracle guard */
};

/* `# expect: proved|violated` header comment */
std::optional<Verdict> expectedVerdict(std::string_view source);

std::string readFile(const std::string &path);

/* parse, analyze, optionally cross-check against the oracle */
RunReport runSource(const std::string &name, const std::string &source, const EngineConfig &cfg,
                    bool oracleCheck = false);
RunReport runFile(const std::string &path, const EngineConfig &cfg, bool oracleCheck = false);

nlohmann::json toJson(const EngineConfig &cfg);
nlohmann::json toJson(const RunReport &r, bool withTiming = true);
std::string summary(const RunReport &r);
std::string dumpStates(const AnalysisResult &r);

/* runs every .lit file of a directory in name order; returns the exit code */
int runBench(const std::string &dir, const EngineConfig &cfg, bool json, bool oracleCheck, std::ostream &out,
             std::ostream &err);

} // namespace ramosaic

#endif
