/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include "golden.hpp"

#include <effcalc/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace golden {

namespace {

std::string slurp(const fs::path &p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string quote(const std::string &a)
{
	if (!a.empty() && a.find_first_of(" \t\"'();[]") == std::string::npos)
		return a;
	return "'" + a + "'";
}

} // namespace

std::vector<Case> load(const std::string &dir)
{
	std::vector<Case> cases;
	for (const auto &e : fs::directory_iterator(dir)) {
		if (e.path().extension() != ".cmd")
			continue;
		Case c;
		c.name = e.path().stem().string();
		std::istringstream in(slurp(e.path()));
		for (std::string line; std::getline(in, line);)
			c.args.push_back(line);
		fs::path out = e.path();
		out.replace_extension(".out");
		if (fs::exists(out))
			c.expected = slurp(out);
		cases.push_back(std::move(c));
	}
	std::sort(cases.begin(), cases.end(),
	          [](const Case &a, const Case &b) { return a.name < b.name; });
	return cases;
}

std::string transcript(const std::vector<std::string> &args)
{
	std::ostringstream out, err;
	int code = effcalc::run_cli(args, out, err);
	std::ostringstream t;
	t << "$ effcalc";
	for (const auto &a : args)
		t << " " << quote(a);
	t << "\n" << out.str();
	std::istringstream e(err.str());
	for (std::string line; std::getline(e, line);)
		t << "stderr: " << line << "\n";
	t << "exit: " << code << "\n";
	return t.str();
}

} // namespace golden
