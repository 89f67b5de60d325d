#ifndef ESER_PARSER_HPP
#define ESER_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "eser/model.hpp"

namespace eser {

/// First error found in a model file; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Parses the model format:
///
///   model  := (decl | constr)* solve
///   decl   := "var" ident "in" (int ".." int | "{" int ("," int)* "}") ";"
///   constr := "constraint" ident "(" args ")" ";"
///   solve  := "solve" ("satisfy" | "all") ";"
///
/// Calls: eq(x,y,c), neq(x,y,c), leq(x,y,c) meaning x op y + c;
/// linear([a..],[v..],"<="|"=",b); alldifferent(v..);
/// forbid(x,y,[a..],[b..]) forbidding each (a_i, b_i). `#` starts a comment.
Model parse_model(std::string_view text);

/// Inverse of parse_model.
std::string print_model(const Model& m);

}  // namespace eser

#endif  // ESER_PARSER_HPP
