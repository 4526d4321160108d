// SPDX-License-Identifier: MIT

#include "ramosaic/Frontend.hpp"
#include "ramosaic/Error.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace ramosaic {

ParseError::ParseError(int line, int col, const std::string &msg)
	: std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line),
	  col_(col)
{}

namespace {

/*** Lexer ***/

enum class Tok { Ident, Int, Punct, End };

struct Token {
	Tok kind = Tok::End;
	std::string text;
	int line = 1;
	int col = 1;
};

std::vector<Token> lex(std::string_view src)
{
	static const char *twoChar[] = {"==", "!=", "<=", ">=", "&&", "||", "=>"};
	std::vector<Token> out;
	int line = 1, col = 1;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n; ++k) {
			if (src[i] == '\n') {
				++line;
				col = 1;
			} else {
				++col;
			}
			++i;
		}
	};
	while (i < src.size()) {
		char c = src[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		if (c == '#') {
			while (i < src.size() && src[i] != '\n')
				advance(1);
			continue;
		}
		Token t;
		t.line = line;
		t.col = col;
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
				++j;
			t.kind = Tok::Ident;
			t.text = std::string(src.substr(i, j - i));
			advance(j - i);
		} else if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
				++j;
			t.kind = Tok::Int;
			t.text = std::string(src.substr(i, j - i));
			advance(j - i);
		} else {
			t.kind = Tok::Punct;
			bool matched = false;
			if (i + 1 < src.size()) {
				for (auto *op : twoChar) {
					if (src[i] == op[0] && src[i + 1] == op[1]) {
						t.text = op;
						advance(2);
						matched = true;
						break;
					}
				}
			}
			if (!matched) {
				static const std::string single = "{}();:,=<>!+-*.";
				if (single.find(c) == std::string::npos)
					throw ParseError(line, col, std::string("unexpected character '") + c + "'");
				t.text = std::string(1, c);
				advance(1);
			}
		}
		out.push_back(std::move(t));
	}
	Token end;
	end.line = line;
	end.col = col;
	out.push_back(end);
	return out;
}

/*** Parser ***/

struct Backtrack {};

class Parser {
public:
	explicit Parser(std::vector<Token> toks) : toks(std::move(toks)) {}

	Program program()
	{
		Program p;
		bool sawVars = false, sawLocks = false;
		while (true) {
			if (!sawVars && peekIs("vars")) {
				sawVars = true;
				next();
				varDecls(p);
			} else if (!sawLocks && peekIs("locks")) {
				sawLocks = true;
				next();
				do {
					p.mutexes.push_back(ident("mutex name"));
				} while (accept(","));
				expect(";");
			} else {
				break;
			}
		}
		if (!peekIs("thread"))
			fail(peek(), "expected 'thread'");
		while (peekIs("thread"))
			p.threads.push_back(thread());
		if (peekIs("assert")) {
			next();
			expect("(");
			p.postcondition = bexpr();
			expect(")");
			expect(";");
		}
		if (peek().kind != Tok::End)
			fail(peek(), "unexpected '" + peek().text + "'");
		return p;
	}

private:
	const Token &peek(std::size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
	const Token &next() { return toks[std::min(pos++, toks.size() - 1)]; }

	bool peekIs(const std::string &text, std::size_t k = 0) const
	{
		auto &t = peek(k);
		return t.kind != Tok::End && t.text == text;
	}

	bool accept(const std::string &text)
	{
		if (!peekIs(text) || peek().kind == Tok::Int)
			return false;
		++pos;
		return true;
	}

	[[noreturn]] void fail(const Token &t, const std::string &msg)
	{
		if (speculative)
			throw Backtrack{};
		throw ParseError(t.line, t.col, msg);
	}

	void expect(const std::string &text)
	{
		if (!accept(text))
			fail(peek(), "expected '" + text + "'" + (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
	}

	static bool isKeyword(const std::string &s)
	{
		static const std::set<std::string> kw = {"vars", "locks", "thread", "if", "else", "while",
							 "store", "load", "cas", "fadd", "lock", "unlock",
							 "assume", "assert", "true", "false"};
		return kw.count(s) != 0;
	}

	std::string ident(const std::string &what)
	{
		auto &t = peek();
		if (t.kind != Tok::Ident || isKeyword(t.text))
			fail(t, "expected " + what);
		return next().text;
	}

	std::int64_t integer(const Token &t)
	{
		std::int64_t v = 0;
		auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
		if (ec != std::errc())
			fail(t, "integer literal out of range");
		return v;
	}

	void varDecls(Program &p)
	{
		do {
			SharedVar v;
			v.name = ident("variable name");
			if (accept("=")) {
				bool neg = accept("-");
				auto &t = peek();
				if (t.kind != Tok::Int)
					throw SemanticError("initializer of '" + v.name + "' is not an integer");
				v.init = integer(next());
				if (neg)
					v.init = -v.init;
			}
			p.vars.push_back(std::move(v));
		} while (accept(","));
		expect(";");
	}

	Thread thread()
	{
		expect("thread");
		Thread t;
		t.name = ident("thread name");
		t.body = block();
		return t;
	}

	std::vector<Stmt> block()
	{
		expect("{");
		std::vector<Stmt> body;
		while (!peekIs("}")) {
			if (peek().kind == Tok::End)
				fail(peek(), "unterminated block");
			body.push_back(stmt());
		}
		expect("}");
		return body;
	}

	Stmt stmt()
	{
		if (peekIs("if")) {
			next();
			IfStmt s;
			expect("(");
			s.cond = bexpr();
			expect(")");
			s.thenBody = block();
			if (accept("else"))
				s.elseBody = block();
			return Stmt{std::move(s)};
		}
		if (peekIs("while")) {
			next();
			WhileStmt s;
			expect("(");
			s.cond = bexpr();
			expect(")");
			s.body = block();
			return Stmt{std::move(s)};
		}
		Instruction i;
		i.line = peek().line;
		i.label.name = ident("label");
		if (accept(".")) {
			auto &t = peek();
			if (t.kind != Tok::Int)
				fail(t, "expected instance number");
			i.label.instance = static_cast<int>(integer(next()));
			if (i.label.instance < 1)
				fail(t, "instance numbers start at 1");
		}
		expect(":");
		op(i);
		expect(";");
		return Stmt{std::move(i)};
	}

	void op(Instruction &i)
	{
		if (accept("store")) {
			i.kind = OpKind::Store;
			i.target = ident("shared variable");
			i.value = iexpr();
		} else if (accept("lock")) {
			i.kind = OpKind::Lock;
			i.target = ident("mutex");
		} else if (accept("unlock")) {
			i.kind = OpKind::Unlock;
			i.target = ident("mutex");
		} else if (accept("assume")) {
			i.kind = OpKind::Assume;
			expect("(");
			i.cond = bexpr();
			expect(")");
		} else if (accept("assert")) {
			i.kind = OpKind::Assert;
			expect("(");
			i.cond = bexpr();
			expect(")");
		} else {
			i.reg = ident("register or operation");
			expect("=");
			if (accept("load")) {
				i.kind = OpKind::Load;
				i.target = ident("shared variable");
			} else if (accept("cas")) {
				i.kind = OpKind::Cas;
				i.target = ident("shared variable");
				i.expected = unary();
				i.value = unary();
			} else if (accept("fadd")) {
				i.kind = OpKind::FetchAdd;
				i.target = ident("shared variable");
				i.value = iexpr();
			} else {
				i.kind = OpKind::Assign;
				i.value = iexpr();
			}
		}
	}

	IntExpr iexpr()
	{
		auto e = term();
		while (true) {
			if (accept("+"))
				e = makeBinary(IntOp::Add, e, term());
			else if (accept("-"))
				e = makeBinary(IntOp::Sub, e, term());
			else
				return e;
		}
	}

	IntExpr term()
	{
		auto e = unary();
		while (accept("*"))
			e = makeBinary(IntOp::Mul, e, unary());
		return e;
	}

	IntExpr unary()
	{
		if (accept("-")) {
			if (peek().kind == Tok::Int)
				return makeConst(-integer(next()));
			return makeNeg(unary());
		}
		auto &t = peek();
		if (t.kind == Tok::Int)
			return makeConst(integer(next()));
		if (accept("(")) {
			auto e = iexpr();
			expect(")");
			return e;
		}
		return makeName(ident("expression"));
	}

	BoolExpr bexpr()
	{
		auto l = disjunction();
		if (accept("=>"))
			return makeOr(makeNot(l), bexpr());
		return l;
	}

	BoolExpr disjunction()
	{
		auto e = conjunction();
		while (accept("||"))
			e = makeOr(e, conjunction());
		return e;
	}

	BoolExpr conjunction()
	{
		auto e = bunary();
		while (accept("&&"))
			e = makeAnd(e, bunary());
		return e;
	}

	static bool isCmpOrArith(const Token &t)
	{
		static const std::set<std::string> ops = {"==", "!=", "<", "<=", ">", ">=", "+", "-", "*"};
		return t.kind == Tok::Punct && ops.count(t.text);
	}

	BoolExpr bunary()
	{
		if (accept("!"))
			return makeNot(bunary());
		if (accept("true"))
			return makeTrue();
		if (accept("false"))
			return makeFalse();
		if (peekIs("(")) {
			auto save = pos;
			bool outer = speculative;
			speculative = true;
			try {
				next();
				auto e = bexpr();
				expect(")");
				speculative = outer;
				if (!isCmpOrArith(peek()))
					return e;
			} catch (Backtrack &) {
				speculative = outer;
			}
			pos = save;
		}
		auto lhs = iexpr();
		auto &t = peek();
		CmpOp op;
		if (accept("=="))
			op = CmpOp::Eq;
		else if (accept("!="))
			op = CmpOp::Ne;
		else if (accept("<="))
			op = CmpOp::Le;
		else if (accept(">="))
			op = CmpOp::Ge;
		else if (accept("<"))
			op = CmpOp::Lt;
		else if (accept(">"))
			op = CmpOp::Gt;
		else
			fail(t, "expected comparison operator");
		return makeCmp(op, lhs, iexpr());
	}

	std::vector<Token> toks;
	std::size_t pos = 0;
	bool speculative = false;
};

/*** Semantic checks ***/

void checkProgram(const Program &p)
{
	std::set<std::string> globals;
	for (const auto &v : p.vars)
		if (!globals.insert(v.name).second)
			throw SemanticError("duplicate shared variable '" + v.name + "'");
	for (const auto &m : p.mutexes)
		if (!globals.insert(m).second)
			throw SemanticError("duplicate name '" + m + "'");
	std::set<std::string> vars, mutexes(p.mutexes.begin(), p.mutexes.end());
	for (const auto &v : p.vars)
		vars.insert(v.name);

	std::set<std::string> threadNames;
	std::set<Label> labels;
	std::map<std::string, std::string> regOwner;
	std::set<std::string> used;
	std::map<std::string, std::set<std::string>> usedBy;
	for (const auto &t : p.threads) {
		if (!threadNames.insert(t.name).second)
			throw SemanticError("duplicate thread '" + t.name + "'");
		auto use = [&](const auto &e) {
			std::set<std::string> names;
			collectNames(e, names);
			for (auto &n : names)
				usedBy[n].insert(t.name);
		};
		std::function<void(const std::vector<Stmt> &)> walk = [&](const std::vector<Stmt> &body) {
			for (const auto &s : body) {
				if (auto *f = std::get_if<IfStmt>(&s.node)) {
					use(f->cond);
					walk(f->thenBody);
					walk(f->elseBody);
					continue;
				}
				if (auto *w = std::get_if<WhileStmt>(&s.node)) {
					use(w->cond);
					walk(w->body);
					continue;
				}
				const auto &i = std::get<Instruction>(s.node);
				if (!labels.insert(i.label).second)
					throw SemanticError("duplicate label '" + i.label.name + "' (line " +
							    std::to_string(i.line) + ")");
				switch (i.kind) {
				case OpKind::Store:
				case OpKind::Load:
				case OpKind::Cas:
				case OpKind::FetchAdd:
					if (!vars.count(i.target))
						throw SemanticError("undeclared shared variable '" + i.target + "' (line " +
								    std::to_string(i.line) + ")");
					break;
				case OpKind::Lock:
				case OpKind::Unlock:
					if (!mutexes.count(i.target))
						throw SemanticError("undeclared mutex '" + i.target + "' (line " +
								    std::to_string(i.line) + ")");
					break;
				default:
					break;
				}
				if (!i.reg.empty()) {
					if (globals.count(i.reg))
						throw SemanticError("register '" + i.reg + "' shadows a shared name");
					auto [it, fresh] = regOwner.emplace(i.reg, t.name);
					if (!fresh && it->second != t.name)
						throw SemanticError("register '" + i.reg + "' assigned in threads '" +
								    it->second + "' and '" + t.name + "'");
				}
				if (i.value)
					use(i.value);
				if (i.expected)
					use(i.expected);
				if (i.cond)
					use(i.cond);
			}
		};
		walk(t.body);
	}
	for (const auto &[name, threads] : usedBy) {
		auto it = regOwner.find(name);
		if (it == regOwner.end()) {
			if (globals.count(name))
				throw SemanticError("shared name '" + name + "' used in an expression; load it first");
			throw SemanticError("undeclared register '" + name + "'");
		}
		for (auto &t : threads)
			if (t != it->second)
				throw SemanticError("register '" + name + "' of thread '" + it->second +
						    "' read by thread '" + t + "'");
	}
	if (p.postcondition) {
		std::set<std::string> names;
		collectNames(p.postcondition, names);
		for (auto &n : names)
			if (!regOwner.count(n))
				throw SemanticError("postcondition names unknown register '" + n + "'");
	}
}

/*** Printer ***/

std::string labelText(const Label &l)
{
	return l.instance == 1 ? l.name : l.name + "." + std::to_string(l.instance);
}

std::string atom(const IntExpr &e)
{
	bool simple = e->op == IntOp::Name || e->op == IntOp::Const;
	return simple ? toString(e) : "(" + toString(e) + ")";
}

void printBody(std::ostringstream &os, const std::vector<Stmt> &body, int depth)
{
	auto indent = std::string(depth, '\t');
	for (const auto &s : body) {
		if (auto *f = std::get_if<IfStmt>(&s.node)) {
			os << indent << "if (" << toString(f->cond) << ") {\n";
			printBody(os, f->thenBody, depth + 1);
			os << indent << "}";
			if (!f->elseBody.empty()) {
				os << " else {\n";
				printBody(os, f->elseBody, depth + 1);
				os << indent << "}";
			}
			os << "\n";
			continue;
		}
		if (auto *w = std::get_if<WhileStmt>(&s.node)) {
			os << indent << "while (" << toString(w->cond) << ") {\n";
			printBody(os, w->body, depth + 1);
			os << indent << "}\n";
			continue;
		}
		const auto &i = std::get<Instruction>(s.node);
		os << indent << labelText(i.label) << ": ";
		switch (i.kind) {
		case OpKind::Store: os << "store " << i.target << " " << toString(i.value); break;
		case OpKind::Load: os << i.reg << " = load " << i.target; break;
		case OpKind::Cas:
			os << i.reg << " = cas " << i.target << " " << atom(i.expected) << " " << atom(i.value);
			break;
		case OpKind::FetchAdd: os << i.reg << " = fadd " << i.target << " " << toString(i.value); break;
		case OpKind::Lock: os << "lock " << i.target; break;
		case OpKind::Unlock: os << "unlock " << i.target; break;
		case OpKind::Assign: os << i.reg << " = " << toString(i.value); break;
		case OpKind::Assume: os << "assume (" << toString(i.cond) << ")"; break;
		case OpKind::Assert: os << "assert (" << toString(i.cond) << ")"; break;
		}
		os << ";\n";
	}
}

/*** Unrolling ***/

class Unroller {
public:
	explicit Unroller(const UnrollOptions &o) : opts(o) {}

	std::vector<Stmt> body(const std::vector<Stmt> &in)
	{
		std::vector<Stmt> out;
		for (const auto &s : in) {
			if (auto *i = std::get_if<Instruction>(&s.node)) {
				auto copy = *i;
				if (loopDepth > 0)
					copy.label.instance = ++instances[copy.label.name];
				out.push_back(Stmt{std::move(copy)});
			} else if (auto *f = std::get_if<IfStmt>(&s.node)) {
				IfStmt c;
				c.cond = f->cond;
				c.thenBody = body(f->thenBody);
				c.elseBody = body(f->elseBody);
				out.push_back(Stmt{std::move(c)});
			} else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
				auto expanded = loop(*w);
				out.insert(out.end(), expanded.begin(), expanded.end());
			}
		}
		return out;
	}

private:
	static bool onlyReads(const std::vector<Stmt> &body)
	{
		for (const auto &s : body) {
			auto *i = std::get_if<Instruction>(&s.node);
			if (!i || (i->kind != OpKind::Load && i->kind != OpKind::Assign))
				return false;
		}
		return true;
	}

	Stmt residual(const std::string &name, BoolExpr cond)
	{
		Instruction r;
		r.kind = OpKind::Assume;
		r.cond = std::move(cond);
		r.label = Label{name, ++instances[name]};
		return Stmt{std::move(r)};
	}

	std::vector<Stmt> loop(const WhileStmt &w)
	{
		auto name = "__w" + std::to_string(++loopCount);
		if (opts.spinAssume && onlyReads(w.body)) {
			++loopDepth;
			auto once = body(w.body);
			--loopDepth;
			once.push_back(residual(name, makeNot(w.cond)));
			return once;
		}
		++loopDepth;
		std::vector<std::vector<Stmt>> copies;
		for (int k = 0; k < opts.bound; ++k)
			copies.push_back(body(w.body));
		--loopDepth;
		std::vector<Stmt> tail{residual(name, opts.residualTrue ? makeTrue() : makeNot(w.cond))};
		for (int k = opts.bound - 1; k >= 0; --k) {
			IfStmt g;
			g.cond = w.cond;
			g.thenBody = std::move(copies[k]);
			g.thenBody.insert(g.thenBody.end(), tail.begin(), tail.end());
			tail = {Stmt{std::move(g)}};
		}
		return tail;
	}

	UnrollOptions opts;
	std::map<std::string, int> instances;
	int loopCount = 0;
	int loopDepth = 0;
};

} // namespace

Program parse(std::string_view source)
{
	Parser parser(lex(source));
	auto p = parser.program();
	checkProgram(p);
	return p;
}

std::string print(const Program &p)
{
	std::ostringstream os;
	if (!p.vars.empty()) {
		os << "vars ";
		for (std::size_t k = 0; k < p.vars.size(); ++k)
			os << (k ? ", " : "") << p.vars[k].name << " = " << p.vars[k].init;
		os << ";\n";
	}
	if (!p.mutexes.empty()) {
		os << "locks ";
		for (std::size_t k = 0; k < p.mutexes.size(); ++k)
			os << (k ? ", " : "") << p.mutexes[k];
		os << ";\n";
	}
	for (const auto &t : p.threads) {
		os << "\nthread " << t.name << " {\n";
		printBody(os, t.body, 1);
		os << "}\n";
	}
	if (p.postcondition)
		os << "\nassert (" << toString(p.postcondition) << ");\n";
	return os.str();
}

Program unroll(const Program &p, int bound)
{
	UnrollOptions o;
	o.bound = bound;
	return unroll(p, o);
}

Program unroll(const Program &p, const UnrollOptions &opts)
{
	if (opts.bound < 1)
		throw std::invalid_argument("unroll bound must be at least 1");
	if (!hasLoops(p))
		return p;
	Program out = p;
	Unroller u(opts);
	for (auto &t : out.threads)
		t.body = u.body(t.body);
	return out;
}

std::set<Label> preLabels(const Program &p, const Label &l)
{
	for (const auto &t : p.threads) {
		auto cfg = buildCfg(t);
		for (const auto &n : cfg.nodes) {
			if (n.instr.label != l)
				continue;
			std::set<Label> out;
			for (auto q : n.preds)
				out.insert(cfg.nodes[q].instr.label);
			return out;
		}
	}
	throw UnknownLabel("unknown label '" + l.str() + "'");
}

} // namespace ramosaic
