// SPDX-License-Identifier: MIT

#include "Fixtures.hpp"

#include "ramosaic/Frontend.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ramosaic::testkit {

std::vector<std::filesystem::path> corpusFiles()
{
	std::vector<std::filesystem::path> files;
	for (const auto &e : std::filesystem::directory_iterator(RAMOSAIC_CORPUS_DIR))
		if (e.path().extension() == ".lit")
			files.push_back(e.path());
	std::sort(files.begin(), files.end());
	return files;
}

std::string slurp(const std::filesystem::path &p)
{
	std::ifstream in(p);
	if (!in)
		throw std::runtime_error("cannot read " + p.string());
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string corpusSource(const std::string &name)
{
	return slurp(std::filesystem::path(RAMOSAIC_CORPUS_DIR) / (name + ".lit"));
}

std::shared_ptr<const Model> modelOf(const std::string &source, const TransferConfig &cfg)
{
	return std::make_shared<const Model>(Model::build(parse(source), cfg));
}

NodeRef nodeOf(const Model &m, const std::string &label)
{
	auto n = m.findNode(Label{label, 1});
	if (!n)
		throw std::runtime_error("no node " + label);
	return {n->first, n->second};
}

EventId eventOf(const Model &m, const std::string &label)
{
	auto n = nodeOf(m, label);
	return m.info(n.thread, n.node).event;
}

int slotOf(const Model &m, const std::string &name)
{
	const auto &names = m.slotNames();
	auto it = std::find(names.begin(), names.end(), name);
	if (it == names.end())
		throw std::runtime_error("no slot " + name);
	return static_cast<int>(it - names.begin());
}

VarId varOf(const Model &m, const std::string &name)
{
	for (std::size_t v = 0; v < m.vars().size(); ++v)
		if (m.vars()[v].name == name)
			return static_cast<VarId>(v);
	throw std::runtime_error("no variable " + name);
}

std::vector<std::string> dumpAll(const std::vector<AbstractState> &states, const Model &m)
{
	std::vector<std::string> out;
	for (const auto &s : states)
		out.push_back(dumpState(s, m));
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<std::string> dumpAt(const AnalysisResult &r, const std::string &label)
{
	return dumpAll(statesAt(r.states, r.model->locationOf(Label{label, 1})), *r.model);
}

} // namespace ramosaic::testkit
