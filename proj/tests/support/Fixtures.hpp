// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_TESTS_FIXTURES_HPP
#define RAMOSAIC_TESTS_FIXTURES_HPP

#include "ramosaic/Engine.hpp"
#include "ramosaic/Model.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace ramosaic::testkit {

std::vector<std::filesystem::path> corpusFiles();
std::string slurp(const std::filesystem::path &p);
/* "mp" -> contents of corpus/mp.lit */
std::string corpusSource(const std::string &name);

std::shared_ptr<const Model> modelOf(const std::string &source, const TransferConfig &cfg = {});

struct NodeRef {
	ThreadId thread;
	int node;
};
/* instance 1 of a source label */
NodeRef nodeOf(const Model &m, const std::string &label);
EventId eventOf(const Model &m, const std::string &label);
int slotOf(const Model &m, const std::string &name);
VarId varOf(const Model &m, const std::string &name);

std::vector<std::string> dumpAll(const std::vector<AbstractState> &states, const Model &m);
/* fixpoint states at a label, dumped */
std::vector<std::string> dumpAt(const AnalysisResult &r, const std::string &label);

} // namespace ramosaic::testkit

#endif
