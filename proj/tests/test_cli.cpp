/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <doctest.h>

#include <effcalc/cli.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace effcalc;

namespace {

struct Run {
	int code;
	std::string out, err;
};

Run run(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = run_cli(args, out, err);
	return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("norm of cos 3 at smoothness 1/2")
{
	Run r = run({"norm", "--precision", "10", "wiener omega=1/2 trigpoly[cos 3: 1]"});
	CHECK(r.code == 0);
	CHECK(r.out == "norm: 3547/2048 ≈ 1.7319 (±2^-10)\n");
}

TEST_CASE("derivative then norm")
{
	Run r = run({"deriv", "--tau", "1", "--precision", "10", "wiener omega=1 trigpoly[sin 1: 1]"});
	CHECK(r.code == 0);
	CHECK(r.out.find("at omega=0") != std::string::npos);
	CHECK(r.out.find("norm: 1 ≈ 1.0000 (±2^-10)") != std::string::npos);
	Run bad = run({"deriv", "--tau", "2", "wiener omega=1 trigpoly[sin 1: 1]"});
	CHECK(bad.code == 4);
	CHECK(bad.err.find("precondition") != std::string::npos);
}

TEST_CASE("exit codes")
{
	CHECK(run({"semidecide-lt", "--fuel", "8", "--x", "1", "--y", "1"}).code == 3);
	CHECK(run({"semidecide-lt", "--x", "1", "--y", "2"}).code == 0);
	CHECK(run({"norm", "wiener omega=-1 trigpoly[]"}).code == 4);
	CHECK(run({"norm", "wiener omega=1 trigpoly[cos 1: 1"}).code == 2);
	CHECK(run({"frobnicate"}).code == 2);
	CHECK(run({}).code == 2);
	CHECK(run({"norm", "--precision", "65", "lp p=2 spike k=0"}).code == 2);
	CHECK(run({"semidecide-lt", "--fuel", "0", "--x", "1", "--y", "2"}).code == 2);
	CHECK(run({"norm"}).code == 2);
	CHECK(run({"eval", "wiener omega=0 trigpoly[]"}).code == 2);
	CHECK(run({"psi-est", "wiener omega=0 trigpoly[]"}).code == 4);
	CHECK(run({"--help"}).code == 0);
}

TEST_CASE("go-check")
{
	Run g = run({"go-check", "--space", "wiener", "--pred", "norm", "--M", "1", "--N", "2",
	             "--fuel", "4096", "wiener omega=0 trigpoly[cos 1: 1/8]"});
	CHECK(g.code == 0);
	Run x = run({"go-check", "--M", "1", "--N", "2", "--fuel", "64",
	             "wiener omega=0 trigpoly[cos 1: 1/4]"});
	CHECK(x.code == 3);
	CHECK(x.out.find("nogo: Halted") != std::string::npos);
	Run c = run({"go-check", "--pred", "collision", "--rmin", "1/2", "--eps", "1/8", "--agents",
	             "(0,0);(1,0)"});
	CHECK(c.code == 0);
	Run close = run({"go-check", "--pred", "collision", "--rmin", "1/2", "--eps", "1/8",
	                 "--agents", "(0,0);(1/2,0)", "--fuel", "32"});
	CHECK(close.code == 3);
	CHECK(run({"go-check", "--space", "lp", "--M", "1", "--N", "2", "wiener omega=0 trigpoly[]"})
	          .code == 4);
}

TEST_CASE("records mode")
{
	Run r = run({"approx", "--records", "--precision", "4", "1/3"});
	CHECK(r.out == "value=1/3 precision=4\n");
	Run s = run({"semidecide-lt", "--records", "--x", "1/8", "--y", "1/4"});
	CHECK(s.out == "outcome=halted steps=6 upper_x=5/32 lower_y=7/32\n");
}

TEST_CASE("descriptor from a file")
{
	std::string path = "effcalc_cli_test_descriptor.txt";
	{
		std::ofstream f(path);
		f << "wiener omega=1/2\n  trigpoly[cos 3: 1]\n";
	}
	CHECK(run({"norm", "--precision", "10", "--file", path}).out ==
	      "norm: 3547/2048 ≈ 1.7319 (±2^-10)\n");
	CHECK(run({"norm", "--file", path, "lp p=2 spike k=0"}).code == 2);
	CHECK(run({"norm", "--file", "/nonexistent/x"}).code == 2);
	std::remove(path.c_str());
}

TEST_CASE("output is a pure function of the arguments")
{
	std::vector<std::string> a = {"demo-no-downcast", "--enum", "toymachine", "--range", "0..6",
	                              "--fuel", "64"};
	CHECK(run(a).out == run(a).out);
}
