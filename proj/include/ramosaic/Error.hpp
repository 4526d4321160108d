// SPDX-License-Identifier: MIT

#ifndef RAMOSAIC_ERROR_HPP
#define RAMOSAIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ramosaic {

/* Syntax error with a 1-based source position */
class ParseError : public std::runtime_error {
public:
	ParseError(int line, int col, const std::string &msg);

	int line() const { return line_; }
	int col() const { return col_; }

private:
	int line_;
	int col_;
};

/* Well-formed syntax, ill-formed program (duplicate labels, unknown names) */
class SemanticError : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

class UnknownLabel : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Malformed locking discipline and similar analysis-time faults */
class AnalysisError : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

class Divergence : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

class CombinationBudgetExceeded : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Enumeration guard tripped */
class TooLarge : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Unreadable input file */
class InputError : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace ramosaic

#endif
