/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/cli.hpp>
#include <effcalc/dsl.hpp>
#include <effcalc/error.hpp>
#include <effcalc/hierarchy.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace effcalc {

namespace {

struct Options {
	CommandConfig cfg;
	std::vector<std::string> positional;
	std::string file;
	std::string tau, omega, rmin, eps, agents, x, y, t;
	std::string space, base = "wiener", pred = "norm", enumerator = "evens", range = "0..16";
	std::optional<std::uint64_t> M, N;
};

/* thrown for flag combinations CLI11 cannot express */
struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw UsageError("cannot read " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string descriptor_text(const Options &o)
{
	if (!o.file.empty()) {
		if (!o.positional.empty())
			throw UsageError("give the descriptor either inline or via --file, not both");
		return read_file(o.file);
	}
	if (o.positional.size() != 1)
		throw UsageError("expected exactly one descriptor argument");
	return o.positional.front();
}

std::vector<std::string> descriptor_texts(const Options &o)
{
	if (o.file.empty())
		return o.positional;
	if (!o.positional.empty())
		throw UsageError("give descriptors either inline or via --file, not both");
	std::vector<std::string> out;
	std::istringstream in(read_file(o.file));
	for (std::string line; std::getline(in, line);)
		if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#')
			out.push_back(line);
	return out;
}

const std::string &required(const std::string &v, const char *flag)
{
	if (v.empty())
		throw UsageError(std::string(flag) + " is required");
	return v;
}

Rational flag_rational(const std::string &v, const char *flag)
{
	return Rational::parse(required(v, flag));
}

Exponent flag_exponent(const std::string &v, const char *flag)
{
	if (required(v, flag) == "inf")
		return Exponent::inf();
	Rational p = Rational::parse(v);
	if (p < Rational(1))
		throw RangeError(std::string(flag) + " must be >= 1 or inf");
	return Exponent(p);
}

Base flag_base(const std::string &v, const char *flag)
{
	if (v == "wiener")
		return Base::wiener;
	if (v == "lp")
		return Base::lp;
	throw UsageError(std::string(flag) + " must be 'wiener' or 'lp'");
}

void print_value(std::ostream &out, const Options &o, const char *key, const Rational &q)
{
	if (o.cfg.records)
		out << key << "=" << q << " precision=" << o.cfg.precision << "\n";
	else
		out << key << ": " << format_approx(q, o.cfg.precision) << "\n";
}

int print_decision(std::ostream &out, const Options &o, const char *key, const SemiDecision &d)
{
	if (o.cfg.records) {
		out << key << "=";
		if (auto *h = std::get_if<Halted>(&d)) {
			out << "halted steps=" << h->steps << " upper_x=" << h->upper_x
			    << " lower_y=" << h->lower_y;
			if (h->witness)
				out << " witness=" << *h->witness;
		} else {
			out << "exhausted fuel=" << std::get<Exhausted>(d).fuel;
		}
		out << "\n";
	} else {
		out << key << ": " << describe(d) << "\n";
	}
	return halted(d) ? exit_ok : exit_exhausted;
}

// commands

int cmd_approx(const Options &o, std::ostream &out)
{
	ExactReal x = parse_real(descriptor_text(o));
	print_value(out, o, "value", x.approx(o.cfg.precision));
	return exit_ok;
}

int cmd_eval(const Options &o, std::ostream &out)
{
	DescriptorAst ast = parse_descriptor(descriptor_text(o));
	if (ast.kind != DescriptorKind::wiener)
		throw PreconditionViolation("eval needs a wiener descriptor");
	ExactReal t = parse_real(required(o.t, "--t"));
	print_value(out, o, "value", eval_at(build_wiener(ast), t, o.cfg.precision));
	return exit_ok;
}

int cmd_norm(const Options &o, std::ostream &out)
{
	DescriptorAst ast = parse_descriptor(descriptor_text(o));
	ExactReal n = ast.kind == DescriptorKind::wiener ? wiener_norm(build_wiener(ast))
	                                                 : lp_norm(build_lp(ast));
	print_value(out, o, "norm", n.approx(o.cfg.precision));
	return exit_ok;
}

int cmd_deriv(const Options &o, std::ostream &out)
{
	DescriptorAst ast = parse_descriptor(descriptor_text(o));
	if (ast.kind != DescriptorKind::wiener)
		throw PreconditionViolation("deriv needs a wiener descriptor");
	Rational tau = flag_rational(o.tau, "--tau");
	FourierDescriptor d = frac_derivative(build_wiener(ast), tau);
	Precision M = o.cfg.precision;

	std::vector<std::uint64_t> modes;
	if (d.support())
		modes.assign(d.support()->begin(),
		             d.support()->begin() + std::min<std::size_t>(d.support()->size(), 16));
	else
		for (std::uint64_t m = 0; m <= 8; m++)
			modes.push_back(m);

	if (o.cfg.records)
		out << "order=" << tau << " omega=" << d.omega() << "\n";
	else
		out << "derivative of order " << tau << " at omega=" << d.omega() << "\n";
	for (std::uint64_t m : modes) {
		std::vector<std::pair<const char *, std::uint64_t>> parts;
		if (m == 0)
			parts = {{"const", 0}};
		else
			parts = {{"cos", 2 * m}, {"sin", 2 * m - 1}};
		for (auto [name, idx] : parts) {
			Rational q = d.coefficient(idx).approx(M);
			if (o.cfg.records)
				out << "mode=" << m << " basis=" << name << " value=" << q << "\n";
			else if (m == 0)
				out << "  const: " << format_approx(q, M) << "\n";
			else
				out << "  " << name << " " << m << ": " << format_approx(q, M) << "\n";
		}
	}
	if (!d.support())
		out << (o.cfg.records ? "truncated=yes\n" : "  (modes beyond 8 omitted)\n");
	print_value(out, o, "norm", wiener_norm(d).approx(M));
	return exit_ok;
}

int cmd_estimate(const Options &o, std::ostream &out, bool omega)
{
	DescriptorAst ast = parse_descriptor(descriptor_text(o));
	std::function<StageEstimate(std::uint64_t)> est;
	if (omega) {
		if (ast.kind != DescriptorKind::wiener)
			throw PreconditionViolation("omega-est needs a wiener descriptor");
		FourierDescriptor f = build_wiener(ast);
		est = [f](std::uint64_t k) { return omega_estimate(f, k); };
	} else {
		if (ast.kind != DescriptorKind::lp)
			throw PreconditionViolation("psi-est needs an lp descriptor");
		LpDescriptor f = build_lp(ast);
		est = [f](std::uint64_t k) { return psi_estimate(f, k); };
	}
	for (std::uint64_t k = 1; k <= o.cfg.stage; k++) {
		StageEstimate e = est(k);
		if (o.cfg.records) {
			const char *kind = e.kind == EstimateKind::cap     ? "cap"
			                 : e.kind == EstimateKind::floor ? "floor"
			                                                 : "value";
			out << "stage=" << k << " kind=" << kind << " value=" << e.value << "\n";
		} else {
			out << "stage " << k << ": " << e.str() << "\n";
		}
	}
	return exit_ok;
}

int cmd_semidecide(const Options &o, std::ostream &out)
{
	if (!o.positional.empty() || !o.file.empty())
		throw UsageError("semidecide-lt takes --x and --y, not a descriptor");
	ExactReal x = parse_real(required(o.x, "--x"));
	ExactReal y = parse_real(required(o.y, "--y"));
	return print_decision(out, o, "outcome", semidecide_lt(x, y, o.cfg.fuel));
}

int cmd_go_check(const Options &o, std::ostream &out)
{
	if (o.pred == "collision") {
		if (!o.positional.empty() || !o.file.empty())
			throw UsageError("the collision predicate takes --agents, not a descriptor");
		CollisionPredicate pred(flag_rational(o.eps, "--eps"), flag_rational(o.rmin, "--rmin"));
		std::vector<Point2> agents = parse_agents(required(o.agents, "--agents"));
		Rational thr = pred.r_min + Rational(2) * pred.epsilon;
		if (o.cfg.records)
			out << "predicate=collision agents=" << agents.size() << " threshold=" << thr << "\n";
		else
			out << "predicate: min pairwise distance > rmin + 2 eps = " << thr << " ("
			    << agents.size() << " agents)\n";
		return print_decision(out, o, "go", collision_go_check(agents, pred, o.cfg.fuel));
	}
	if (o.pred != "norm")
		throw UsageError("--pred must be 'norm' or 'collision'");
	if (!o.M || !o.N)
		throw UsageError("the norm predicate needs --M and --N");
	NormPredicate pred(*o.M, *o.N);
	DescriptorAst ast = parse_descriptor(descriptor_text(o));
	if (!o.space.empty() &&
	    (flag_base(o.space, "--space") == Base::wiener) != (ast.kind == DescriptorKind::wiener))
		throw PreconditionViolation("descriptor does not live in --space " + o.space);
	ExactReal n = ast.kind == DescriptorKind::wiener ? wiener_norm(build_wiener(ast))
	                                                 : lp_norm(build_lp(ast));
	if (o.cfg.records)
		out << "predicate=norm M=" << pred.M << " N=" << pred.N << " threshold=" << pred.threshold()
		    << "\n";
	else
		out << "predicate: norm < 2^-" << pred.M << " - 2^-" << pred.N << " = " << pred.threshold()
		    << "\n";
	int code = print_decision(out, o, "go", go_norm_check(n, pred, o.cfg.fuel));
	print_decision(out, o, "nogo", nogo_norm_check(pred));
	if (!o.cfg.records)
		out << "note: the NO-GO check halts for every input, since points farther than 2^-"
		    << pred.N << " from the twin falsify the antecedent\n";
	return code;
}

std::vector<std::string> wiener_samples(const Rational &omega)
{
	std::string w = "wiener omega=" + omega.str() + " ";
	std::string s1 = (omega + Rational(2)).str(), s2 = (omega + Rational(5, 2)).str(),
	            s3 = (omega + Rational(4)).str();
	return {
		w + "trigpoly[cos 1: 1]",
		w + "trigpoly[cos 3: 1, sin 1: -1/2, const 1/4]",
		w + "trigpoly[sin 2: 1/3]",
		w + "trigpoly[const 1]",
		w + "trigpoly[cos 5: -2, sin 5: 3]",
		w + "trigpoly[]",
		w + "pseries s=" + s1 + " basis=cos",
		w + "pseries s=" + s2 + " basis=sin",
		w + "pseries s=" + s3 + " basis=cos",
		w + "trigpoly[cos 2: 1/2, cos 4: 1/4, cos 8: 1/8]",
	};
}

std::vector<std::string> lp_samples(const Exponent &p)
{
	std::string l = "lp p=" + p.str() + " ";
	std::vector<std::string> v = {
		l + "spike k=0",
		l + "spike k=3 value=2",
		l + "spike k=7 value=-1/3",
		l + "geometric",
		l + "geometric ratio=1/3",
		l + "geometric ratio=3/4",
		l + "pdecay s=2",
		l + "pdecay s=3",
	};
	if (p == Exponent(1)) {
		v.push_back(l + "from-wiener wiener omega=0 trigpoly[cos 3: 1, sin 1: -1/2]");
		v.push_back(l + "from-wiener wiener omega=0 pseries s=3 basis=sin");
	} else {
		v.push_back(l + "pdecay s=5/2");
		v.push_back(l + "spike k=12 value=5");
	}
	return v;
}

int cmd_demo_upcast(const Options &o, std::ostream &out)
{
	Base base = flag_base(o.space.empty() ? o.base : o.space, "--space");
	std::vector<std::string> texts = descriptor_texts(o);
	UpcastReport r;
	if (base == Base::wiener) {
		Rational omega = o.omega.empty() ? Rational(1) : flag_rational(o.omega, "--omega");
		Rational tau = o.tau.empty() ? Rational(1, 2) : flag_rational(o.tau, "--tau");
		if (texts.empty())
			texts = wiener_samples(omega);
		std::vector<std::pair<std::string, FourierDescriptor>> samples;
		for (const auto &s : texts)
			samples.emplace_back(s, build_wiener(parse_descriptor(s)));
		r = upcast_demo(samples, tau, o.cfg.precision);
	} else {
		Exponent p = o.omega.empty() ? Exponent(1) : flag_exponent(o.omega, "--omega");
		Exponent tau = o.tau.empty() ? Exponent(2) : flag_exponent(o.tau, "--tau");
		if (texts.empty())
			texts = lp_samples(p);
		std::vector<std::pair<std::string, LpDescriptor>> samples;
		for (const auto &s : texts)
			samples.emplace_back(s, build_lp(parse_descriptor(s)));
		r = upcast_demo(samples, tau, o.cfg.precision);
	}
	print_report(out, r, o.cfg.records);
	return exit_ok;
}

int cmd_demo_no_downcast(const Options &o, std::ostream &out)
{
	if (!o.positional.empty() || !o.file.empty())
		throw UsageError("demo-no-downcast takes no descriptor");
	Base base = flag_base(o.space.empty() ? o.base : o.space, "--base");
	auto [first, last] = parse_range(o.range);
	std::shared_ptr<const Enumerator> e = make_enumerator(o.enumerator);
	NoDowncastReport r;
	if (base == Base::wiener) {
		Rational omega = o.omega.empty() ? Rational(1) : flag_rational(o.omega, "--omega");
		Rational tau = o.tau.empty() ? Rational(1, 2) : flag_rational(o.tau, "--tau");
		r = no_downcast_wiener(omega, tau, e, o.cfg.fuel, first, last);
	} else {
		Rational omega = o.omega.empty() ? Rational(1) : flag_rational(o.omega, "--omega");
		Exponent tau = o.tau.empty() ? Exponent(2) : flag_exponent(o.tau, "--tau");
		r = no_downcast_lp(omega, tau, e, o.cfg.fuel, first, last);
	}
	print_report(out, r, o.cfg.records);
	return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
	CLI::App app{"effcalc: certified computations on the weighted Wiener algebra and l^p"};
	app.name("effcalc");
	app.require_subcommand(1);
	Options o;

	auto common = [&](CLI::App *sub) {
		sub->add_option("--precision", o.cfg.precision, "output precision M (error 2^-M)")
			->check(CLI::Range(0, 64));
		sub->add_flag("--records", o.cfg.records, "emit key=value records");
		return sub;
	};
	auto with_descriptor = [&](CLI::App *sub) {
		sub->add_option("descriptor", o.positional, "descriptor text");
		sub->add_option("--file", o.file, "read the descriptor from a file");
		return sub;
	};
	auto with_fuel = [&](CLI::App *sub) {
		sub->add_option("--fuel", o.cfg.fuel, "search budget")
			->check(CLI::Range(std::uint64_t(1), std::numeric_limits<std::uint64_t>::max()));
		return sub;
	};

	std::vector<std::pair<CLI::App *, std::function<int()>>> cmds;
	auto add = [&](const char *name, const char *help, std::function<int()> run) {
		CLI::App *sub = app.add_subcommand(name, help);
		cmds.emplace_back(sub, std::move(run));
		return sub;
	};

	with_descriptor(common(add("approx", "approximate a real expression",
	                           [&] { return cmd_approx(o, out); })));
	auto *eval = with_descriptor(common(add("eval", "evaluate a wiener descriptor at t",
	                                        [&] { return cmd_eval(o, out); })));
	eval->add_option("--t", o.t, "point (real expression)");
	with_descriptor(common(add("norm", "weighted Wiener or l^p norm",
	                           [&] { return cmd_norm(o, out); })));
	auto *deriv = with_descriptor(common(add("deriv", "fractional (Weyl) derivative",
	                                         [&] { return cmd_deriv(o, out); })));
	deriv->add_option("--tau", o.tau, "order");
	for (auto [name, is_omega] : {std::pair{"omega-est", true}, std::pair{"psi-est", false}}) {
		auto *sub = with_descriptor(common(add(
			name, is_omega ? "anytime degree-of-smoothness estimate" : "anytime degree-of-decay estimate",
			[&, is_omega = is_omega] { return cmd_estimate(o, out, is_omega); })));
		sub->add_option("--stage", o.cfg.stage, "last stage")->check(CLI::Range(1, 20));
	}
	auto *sd = with_fuel(common(add("semidecide-lt", "semidecide x < y",
	                                [&] { return cmd_semidecide(o, out); })));
	sd->add_option("--x", o.x, "real expression");
	sd->add_option("--y", o.y, "real expression");
	with_descriptor(sd);
	auto *go = with_descriptor(with_fuel(common(add("go-check", "GO/NO-GO integrity check",
	                                                [&] { return cmd_go_check(o, out); }))));
	go->add_option("--space", o.space, "wiener | lp");
	go->add_option("--pred", o.pred, "norm | collision");
	go->add_option("--M", o.M, "norm predicate: outer exponent");
	go->add_option("--N", o.N, "norm predicate: inner exponent");
	go->add_option("--rmin", o.rmin, "collision predicate: minimum distance");
	go->add_option("--eps", o.eps, "collision predicate: twin tolerance");
	go->add_option("--agents", o.agents, "collision predicate: \"(x,y);(x,y);...\"");
	auto *up = with_descriptor(common(add("demo-upcast", "upcast identity-on-data evidence",
	                                      [&] { return cmd_demo_upcast(o, out); })));
	up->add_option("--space,--base", o.space, "wiener | lp");
	up->add_option("--omega", o.omega, "source label");
	up->add_option("--tau", o.tau, "target label");
	auto *nd = with_descriptor(with_fuel(common(add("demo-no-downcast",
	                                                "no-downcast evidence over an enumerator",
	                                                [&] { return cmd_demo_no_downcast(o, out); }))));
	nd->add_option("--base,--space", o.space, "wiener | lp");
	nd->add_option("--omega", o.omega, "target label");
	nd->add_option("--tau", o.tau, "family label");
	nd->add_option("--enum", o.enumerator, "evens | toymachine")
		->check(CLI::IsMember({"evens", "toymachine"}));
	nd->add_option("--range", o.range, "indices a..b");

	try {
		std::vector<std::string> rev(args.rbegin(), args.rend());
		app.parse(rev);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_usage;
	}

	for (auto &[sub, run] : cmds) {
		if (!sub->parsed())
			continue;
		o.cfg.command = sub->get_name();
		try {
			return run();
		} catch (const UsageError &e) {
			err << "usage error: " << e.what() << "\n";
			return exit_usage;
		} catch (const ParseError &e) {
			err << "parse error at " << e.what() << "\n";
			return exit_usage;
		} catch (const FuelExhausted &e) {
			err << "exhausted: " << e.what() << " (fuel " << e.fuel << ")\n";
			return exit_exhausted;
		} catch (const PreconditionViolation &e) {
			err << "precondition violated: " << e.what() << "\n";
			return exit_precondition;
		} catch (const ResourceLimit &e) {
			err << "resource limit: " << e.what() << "\n";
			return exit_precondition;
		}
	}
	return exit_usage;
}

} // namespace effcalc
