/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/dsl.hpp>
#include <effcalc/error.hpp>
#include <effcalc/hierarchy.hpp>

#include <cctype>
#include <sstream>

namespace effcalc {

LimitReal TargetSpec::to_limit() const
{
	if (alternating)
		return alternating_limit(mode, a, b);
	return constant_limit(mode, a);
}

bool operator==(const DescriptorAst &a, const DescriptorAst &b)
{
	if (a.kind != b.kind || a.label != b.label || a.body.index() != b.body.index())
		return false;
	return std::visit(
		[&](const auto &x) -> bool {
			using T = std::decay_t<decltype(x)>;
			const T &y = std::get<T>(b.body);
			if constexpr (std::is_same_v<T, TrigBody>)
				return x.terms == y.terms;
			else if constexpr (std::is_same_v<T, PseriesBody>)
				return x.s == y.s && x.basis == y.basis;
			else if constexpr (std::is_same_v<T, Thm2Body> || std::is_same_v<T, Thm4Body>)
				return x.tau == y.tau && x.target == y.target;
			else if constexpr (std::is_same_v<T, CexBody>)
				return x.target == y.target && x.enumerator == y.enumerator && x.n == y.n;
			else if constexpr (std::is_same_v<T, SpikeBody>)
				return x.k == y.k && x.value == y.value;
			else if constexpr (std::is_same_v<T, GeometricBody>)
				return x.ratio == y.ratio;
			else if constexpr (std::is_same_v<T, PdecayBody>)
				return x.s == y.s;
			else
				return *x.inner == *y.inner;
		},
		a.body);
}

namespace {

struct Token {
	enum Kind { word, punct, end } kind;
	std::string text;
	std::size_t line, col;
};

class Lexer {
public:
	explicit Lexer(std::string_view s) : s_(s) { advance(); }

	const Token &peek() const { return tok_; }

	Token take()
	{
		Token t = tok_;
		advance();
		return t;
	}

	[[noreturn]] void fail(const Token &t, const std::string &expected) const
	{
		std::string found = t.kind == Token::end ? "end of input" : "'" + t.text + "'";
		throw ParseError(t.line, t.col, "expected " + expected + ", found " + found);
	}

	Token expect_word(const std::string &what)
	{
		if (tok_.kind != Token::word)
			fail(tok_, what);
		return take();
	}

	void expect_punct(char c)
	{
		if (tok_.kind != Token::punct || tok_.text[0] != c)
			fail(tok_, std::string("'") + c + "'");
		take();
	}

	bool accept_punct(char c)
	{
		if (tok_.kind == Token::punct && tok_.text[0] == c) {
			take();
			return true;
		}
		return false;
	}

	bool at_word(const std::string &w) const
	{
		return tok_.kind == Token::word && tok_.text == w;
	}

	/* key "=" ; the key must match */
	void expect_key(const std::string &key)
	{
		if (!at_word(key))
			fail(tok_, "'" + key + "='");
		take();
		expect_punct('=');
	}

private:
	void advance()
	{
		while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
			if (s_[i_] == '\n') {
				line_++;
				col_ = 1;
			} else {
				col_++;
			}
			i_++;
		}
		tok_.line = line_;
		tok_.col = col_;
		if (i_ >= s_.size()) {
			tok_.kind = Token::end;
			tok_.text.clear();
			return;
		}
		char c = s_[i_];
		auto wordish = [](char ch) {
			return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/' ||
			       ch == '_';
		};
		if (wordish(c)) {
			std::size_t b = i_;
			while (i_ < s_.size() && wordish(s_[i_]))
				i_++;
			tok_.kind = Token::word;
			tok_.text.assign(s_.substr(b, i_ - b));
			col_ += i_ - b;
			return;
		}
		tok_.kind = Token::punct;
		tok_.text.assign(1, c);
		i_++;
		col_++;
	}

	std::string_view s_;
	std::size_t i_ = 0, line_ = 1, col_ = 1;
	Token tok_;
};

Rational word_rational(Lexer &lx, const std::string &what)
{
	Token t = lx.expect_word(what);
	try {
		return Rational::parse(t.text);
	} catch (const ParseError &) {
		lx.fail(t, what);
	}
}

std::uint64_t word_natural(Lexer &lx, const std::string &what)
{
	Token t = lx.expect_word(what);
	if (t.text.empty() || t.text.size() > 19)
		lx.fail(t, what);
	for (char c : t.text)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			lx.fail(t, what);
	return std::stoull(t.text);
}

TargetSpec parse_target(Lexer &lx, LimitMode dflt)
{
	TargetSpec t{dflt, false, 0, 0};
	if (lx.at_word("limsup") || lx.at_word("liminf") || lx.at_word("lim")) {
		std::string m = lx.take().text;
		t.mode = m == "limsup" ? LimitMode::limsup : m == "liminf" ? LimitMode::liminf
		                                                           : LimitMode::lim;
	}
	if (lx.at_word("const")) {
		lx.take();
		t.a = word_rational(lx, "rational");
		t.b = t.a;
		return t;
	}
	if (lx.at_word("alt")) {
		lx.take();
		lx.expect_punct('(');
		t.a = word_rational(lx, "rational");
		lx.expect_punct(',');
		t.b = word_rational(lx, "rational");
		lx.expect_punct(')');
		t.alternating = true;
		return t;
	}
	lx.fail(lx.peek(), "'const' or 'alt'");
}

CexBody parse_cex(Lexer &lx)
{
	CexBody b;
	lx.expect_key("target");
	b.target = word_rational(lx, "rational");
	lx.expect_key("enum");
	Token e = lx.expect_word("'evens' or 'toymachine'");
	if (e.text != "evens" && e.text != "toymachine")
		lx.fail(e, "'evens' or 'toymachine'");
	b.enumerator = e.text;
	lx.expect_key("n");
	b.n = word_natural(lx, "natural number");
	return b;
}

DescriptorAst parse_one(Lexer &lx);

DescriptorAst parse_wiener(Lexer &lx)
{
	DescriptorAst ast{DescriptorKind::wiener, std::nullopt, TrigBody{}};
	lx.expect_key("omega");
	Token lt = lx.peek();
	Rational omega = word_rational(lx, "rational");
	if (omega.sign() < 0)
		throw RangeError(std::to_string(lt.line) + ":" + std::to_string(lt.col) +
		                 ": omega must be >= 0, got " + omega.str());
	ast.label = omega;
	Token kw = lx.expect_word("'trigpoly', 'pseries', 'thm2' or 'cex'");
	if (kw.text == "trigpoly") {
		TrigBody b;
		lx.expect_punct('[');
		if (!lx.accept_punct(']')) {
			do {
				Token t = lx.expect_word("'cos', 'sin' or 'const'");
				if (t.text == "const") {
					b.terms.push_back({Basis::cos, 0, word_rational(lx, "rational")});
				} else if (t.text == "cos" || t.text == "sin") {
					std::uint64_t m = word_natural(lx, "frequency");
					lx.expect_punct(':');
					Basis bs = t.text == "cos" ? Basis::cos : Basis::sin;
					b.terms.push_back({bs, m, word_rational(lx, "rational")});
				} else {
					lx.fail(t, "'cos', 'sin' or 'const'");
				}
			} while (lx.accept_punct(','));
			lx.expect_punct(']');
		}
		ast.body = std::move(b);
	} else if (kw.text == "pseries") {
		PseriesBody b;
		lx.expect_key("s");
		b.s = word_rational(lx, "rational");
		if (lx.at_word("basis")) {
			lx.expect_key("basis");
			Token t = lx.expect_word("'cos' or 'sin'");
			if (t.text != "cos" && t.text != "sin")
				lx.fail(t, "'cos' or 'sin'");
			b.basis = t.text == "cos" ? Basis::cos : Basis::sin;
		}
		ast.body = b;
	} else if (kw.text == "thm2") {
		Thm2Body b;
		lx.expect_key("tau");
		b.tau = word_rational(lx, "rational");
		lx.expect_key("target");
		b.target = parse_target(lx, LimitMode::liminf);
		ast.body = b;
	} else if (kw.text == "cex") {
		ast.body = parse_cex(lx);
	} else {
		lx.fail(kw, "'trigpoly', 'pseries', 'thm2' or 'cex'");
	}
	return ast;
}

DescriptorAst parse_lp(Lexer &lx)
{
	DescriptorAst ast{DescriptorKind::lp, std::nullopt, TrigBody{}};
	lx.expect_key("p");
	if (lx.at_word("inf")) {
		lx.take();
	} else {
		Token lt = lx.peek();
		Rational p = word_rational(lx, "rational or 'inf'");
		if (p < Rational(1))
			throw RangeError(std::to_string(lt.line) + ":" + std::to_string(lt.col) +
			                 ": p must be >= 1 or inf, got " + p.str());
		ast.label = p;
	}
	Token kw = lx.expect_word("'spike', 'geometric', 'pdecay', 'thm4', 'cex' or 'from-wiener'");
	if (kw.text == "spike") {
		SpikeBody b;
		lx.expect_key("k");
		b.k = word_natural(lx, "natural number");
		if (lx.at_word("value")) {
			lx.expect_key("value");
			b.value = word_rational(lx, "rational");
		}
		ast.body = b;
	} else if (kw.text == "geometric") {
		GeometricBody b;
		if (lx.at_word("ratio")) {
			lx.expect_key("ratio");
			b.ratio = word_rational(lx, "rational");
		}
		ast.body = b;
	} else if (kw.text == "pdecay") {
		PdecayBody b;
		lx.expect_key("s");
		b.s = word_rational(lx, "rational");
		ast.body = b;
	} else if (kw.text == "thm4") {
		Thm4Body b;
		lx.expect_key("tau");
		b.tau = word_rational(lx, "rational");
		lx.expect_key("target");
		b.target = parse_target(lx, LimitMode::limsup);
		ast.body = b;
	} else if (kw.text == "cex") {
		ast.body = parse_cex(lx);
	} else if (kw.text == "from-wiener") {
		if (!lx.at_word("wiener"))
			lx.fail(lx.peek(), "'wiener'");
		auto inner = std::make_shared<DescriptorAst>(parse_one(lx));
		ast.body = FromWienerBody{std::move(inner)};
	} else {
		lx.fail(kw, "'spike', 'geometric', 'pdecay', 'thm4', 'cex' or 'from-wiener'");
	}
	return ast;
}

DescriptorAst parse_one(Lexer &lx)
{
	Token kind = lx.expect_word("'wiener' or 'lp'");
	if (kind.text == "wiener")
		return parse_wiener(lx);
	if (kind.text == "lp")
		return parse_lp(lx);
	lx.fail(kind, "'wiener' or 'lp'");
}

std::string target_text(const TargetSpec &t)
{
	std::string s = to_string(t.mode) + " ";
	if (t.alternating)
		return s + "alt(" + t.a.str() + "," + t.b.str() + ")";
	return s + "const " + t.a.str();
}

} // namespace

DescriptorAst parse_descriptor(std::string_view text)
{
	Lexer lx(text);
	DescriptorAst ast = parse_one(lx);
	if (lx.peek().kind != Token::end)
		lx.fail(lx.peek(), "end of input");
	return ast;
}

std::string print_descriptor(const DescriptorAst &ast)
{
	std::ostringstream os;
	if (ast.kind == DescriptorKind::wiener)
		os << "wiener omega=" << *ast.label << " ";
	else
		os << "lp p=" << (ast.label ? ast.label->str() : "inf") << " ";
	std::visit(
		[&](const auto &b) {
			using T = std::decay_t<decltype(b)>;
			if constexpr (std::is_same_v<T, TrigBody>) {
				os << "trigpoly[";
				for (std::size_t i = 0; i < b.terms.size(); i++) {
					const auto &t = b.terms[i];
					if (i)
						os << ", ";
					if (t.m == 0 && t.basis == Basis::cos)
						os << "const " << t.value;
					else
						os << (t.basis == Basis::cos ? "cos " : "sin ") << t.m << ": " << t.value;
				}
				os << "]";
			} else if constexpr (std::is_same_v<T, PseriesBody>) {
				os << "pseries s=" << b.s << " basis=" << (b.basis == Basis::cos ? "cos" : "sin");
			} else if constexpr (std::is_same_v<T, Thm2Body>) {
				os << "thm2 tau=" << b.tau << " target=" << target_text(b.target);
			} else if constexpr (std::is_same_v<T, Thm4Body>) {
				os << "thm4 tau=" << b.tau << " target=" << target_text(b.target);
			} else if constexpr (std::is_same_v<T, CexBody>) {
				os << "cex target=" << b.target << " enum=" << b.enumerator << " n=" << b.n;
			} else if constexpr (std::is_same_v<T, SpikeBody>) {
				os << "spike k=" << b.k << " value=" << b.value;
			} else if constexpr (std::is_same_v<T, GeometricBody>) {
				os << "geometric ratio=" << b.ratio;
			} else if constexpr (std::is_same_v<T, PdecayBody>) {
				os << "pdecay s=" << b.s;
			} else {
				os << "from-wiener " << print_descriptor(*b.inner);
			}
		},
		ast.body);
	return os.str();
}

namespace {

Exponent lp_label(const DescriptorAst &ast)
{
	return ast.label ? Exponent(*ast.label) : Exponent::inf();
}

} // namespace

FourierDescriptor build_wiener(const DescriptorAst &ast)
{
	if (ast.kind != DescriptorKind::wiener)
		throw PreconditionViolation("expected a wiener descriptor");
	const Rational &omega = *ast.label;
	if (auto *b = std::get_if<TrigBody>(&ast.body))
		return trigpoly(omega, b->terms);
	if (auto *b = std::get_if<PseriesBody>(&ast.body))
		return pseries(omega, b->s, b->basis);
	if (auto *b = std::get_if<Thm2Body>(&ast.body)) {
		if (!omega.is_zero())
			throw PreconditionViolation("thm2 witness lives at omega=0");
		return thm2_witness(b->target.to_limit(), b->tau);
	}
	const auto &b = std::get<CexBody>(ast.body);
	return counterexample_wiener(b.target, omega, make_enumerator(b.enumerator), b.n);
}

LpDescriptor build_lp(const DescriptorAst &ast)
{
	if (ast.kind != DescriptorKind::lp)
		throw PreconditionViolation("expected an lp descriptor");
	Exponent p = lp_label(ast);
	if (auto *b = std::get_if<SpikeBody>(&ast.body))
		return spike(p, b->k, b->value);
	if (auto *b = std::get_if<GeometricBody>(&ast.body))
		return geometric(p, b->ratio);
	if (auto *b = std::get_if<PdecayBody>(&ast.body))
		return pdecay(p, b->s);
	if (auto *b = std::get_if<Thm4Body>(&ast.body)) {
		if (!p.is_inf())
			throw PreconditionViolation("thm4 witness lives at p=inf");
		return thm4_witness(b->target.to_limit(), b->tau);
	}
	if (auto *b = std::get_if<CexBody>(&ast.body))
		return counterexample_lp(b->target, p, make_enumerator(b->enumerator), b->n);
	const auto &b = std::get<FromWienerBody>(ast.body);
	if (!(p == Exponent(1)))
		throw PreconditionViolation("from-wiener yields p=1");
	return wiener_to_l1(build_wiener(*b.inner));
}

// real expressions

namespace {

class ExprParser {
public:
	explicit ExprParser(std::string_view s) : lx_(s) {}

	ExactReal parse()
	{
		ExactReal v = expr();
		if (lx_.peek().kind != Token::end)
			lx_.fail(lx_.peek(), "operator or end of input");
		return v;
	}

private:
	/* words here are identifiers or naturals; '-' and '/' are operators */
	ExactReal expr()
	{
		ExactReal v = term();
		for (;;) {
			if (lx_.accept('+'))
				v = add(v, term());
			else if (lx_.accept('-'))
				v = sub(v, term());
			else
				return v;
		}
	}

	ExactReal term()
	{
		ExactReal v = unary();
		for (;;) {
			if (lx_.accept('*')) {
				v = mul(v, unary());
			} else if (lx_.accept('/')) {
				Token t = lx_.peek();
				std::uint64_t d = natural();
				if (d == 0)
					lx_.fail(t, "positive integer");
				v = mul(v, ExactReal(Rational(mpz_class(1), mpz_class(std::to_string(d)))));
			} else {
				return v;
			}
		}
	}

	ExactReal unary()
	{
		if (lx_.accept('-'))
			return neg(unary());
		return atom();
	}

	std::uint64_t natural()
	{
		Token t = lx_.peek();
		if (t.kind != Token::word || !std::isdigit(static_cast<unsigned char>(t.text[0])))
			lx_.fail(t, "integer");
		lx_.take();
		if (t.text.size() > 19)
			lx_.fail(t, "integer below 10^19");
		for (char c : t.text)
			if (!std::isdigit(static_cast<unsigned char>(c)))
				lx_.fail(t, "integer");
		return std::stoull(t.text);
	}

	Rational rational()
	{
		bool negative = lx_.accept('-');
		Rational r(mpz_class(std::to_string(natural())));
		if (lx_.accept('/')) {
			Token t = lx_.peek();
			std::uint64_t d = natural();
			if (d == 0)
				lx_.fail(t, "positive integer");
			r = r / Rational(mpz_class(std::to_string(d)));
		}
		return negative ? -r : r;
	}

	ExactReal atom()
	{
		Token t = lx_.peek();
		if (lx_.accept('(')) {
			ExactReal v = expr();
			lx_.expect(')');
			return v;
		}
		if (t.kind != Token::word)
			lx_.fail(t, "number, 'pi', function or '('");
		if (std::isdigit(static_cast<unsigned char>(t.text[0])))
			return ExactReal(Rational(mpz_class(std::to_string(natural()))));
		lx_.take();
		if (t.text == "pi")
			return pi();
		lx_.expect('(');
		ExactReal v;
		if (t.text == "pow") {
			std::uint64_t n = natural();
			lx_.expect(',');
			v = rat_pow(n, rational());
		} else if (t.text == "abs" || t.text == "sqrt" || t.text == "cos" || t.text == "sin") {
			ExactReal a = expr();
			v = t.text == "abs" ? absval(a) : t.text == "sqrt" ? sqrt(a)
			  : t.text == "cos" ? cos(a) : sin(a);
		} else if (t.text == "max" || t.text == "min") {
			ExactReal a = expr();
			lx_.expect(',');
			ExactReal b = expr();
			v = t.text == "max" ? maxval(a, b) : minval(a, b);
		} else {
			lx_.fail(t, "'pi', 'pow', 'abs', 'sqrt', 'cos', 'sin', 'max' or 'min'");
		}
		lx_.expect(')');
		return v;
	}

	/* character-level lexer: identifiers and digit runs are words */
	class ExprLexer {
	public:
		explicit ExprLexer(std::string_view s) : s_(s) { advance(); }
		const Token &peek() const { return tok_; }
		Token take() { Token t = tok_; advance(); return t; }

		bool accept(char c)
		{
			if (tok_.kind == Token::punct && tok_.text[0] == c) {
				advance();
				return true;
			}
			return false;
		}

		void expect(char c)
		{
			if (!accept(c))
				fail(tok_, std::string("'") + c + "'");
		}

		[[noreturn]] void fail(const Token &t, const std::string &expected) const
		{
			std::string found = t.kind == Token::end ? "end of input" : "'" + t.text + "'";
			throw ParseError(t.line, t.col, "expected " + expected + ", found " + found);
		}

	private:
		void advance()
		{
			while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
				i_++;
			tok_.line = 1;
			tok_.col = i_ + 1;
			if (i_ >= s_.size()) {
				tok_.kind = Token::end;
				tok_.text.clear();
				return;
			}
			char c = s_[i_];
			std::size_t b = i_;
			if (std::isdigit(static_cast<unsigned char>(c))) {
				while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
					i_++;
			} else if (std::isalpha(static_cast<unsigned char>(c))) {
				while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_])))
					i_++;
			} else {
				tok_.kind = Token::punct;
				tok_.text.assign(1, c);
				i_++;
				return;
			}
			tok_.kind = Token::word;
			tok_.text.assign(s_.substr(b, i_ - b));
		}

		std::string_view s_;
		std::size_t i_ = 0;
		Token tok_;
	};

	ExprLexer lx_;
};

std::string trim(std::string_view s)
{
	std::size_t b = 0, e = s.size();
	while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
		b++;
	while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
		e--;
	return std::string(s.substr(b, e - b));
}

} // namespace

ExactReal parse_real(std::string_view text)
{
	return ExprParser(text).parse();
}

std::vector<Point2> parse_agents(std::string_view text)
{
	std::vector<Point2> out;
	std::string s = trim(text);
	if (s.empty())
		return out;
	std::size_t pos = 0;
	while (pos <= s.size()) {
		std::size_t end = s.find(';', pos);
		if (end == std::string::npos)
			end = s.size();
		std::string item = trim(std::string_view(s).substr(pos, end - pos));
		if (item.size() < 5 || item.front() != '(' || item.back() != ')')
			throw ParseError(1, pos + 1, "expected '(x,y)', found '" + item + "'");
		std::string inner = item.substr(1, item.size() - 2);
		std::size_t comma = inner.find(',');
		if (comma == std::string::npos)
			throw ParseError(1, pos + 1, "expected ',' inside '" + item + "'");
		auto coord = [&](const std::string &c) {
			try {
				return Rational::parse(trim(c));
			} catch (const ParseError &) {
				throw ParseError(1, pos + 1, "expected rational coordinate, found '" + trim(c) + "'");
			}
		};
		out.emplace_back(ExactReal(coord(inner.substr(0, comma))),
		                 ExactReal(coord(inner.substr(comma + 1))));
		if (end == s.size())
			break;
		pos = end + 1;
	}
	return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(std::string_view text)
{
	std::string s = trim(text);
	std::size_t dots = s.find("..");
	auto nat = [&](const std::string &t, std::size_t col) {
		if (t.empty() || t.size() > 19 ||
		    t.find_first_not_of("0123456789") != std::string::npos)
			throw ParseError(1, col, "expected natural number in range, found '" + t + "'");
		return std::stoull(t);
	};
	if (dots == std::string::npos)
		throw ParseError(1, 1, "expected range 'a..b', found '" + s + "'");
	std::uint64_t a = nat(s.substr(0, dots), 1);
	std::uint64_t b = nat(s.substr(dots + 2), dots + 3);
	if (a > b)
		throw RangeError("range start exceeds end");
	return {a, b};
}

} // namespace effcalc
