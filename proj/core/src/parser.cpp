#include "eser/parser.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace eser {

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind{Tok::End};
  std::string text;
  long long value{0};
  int line{1};
  int column{1};
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      const std::size_t start = pos_;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      if (t.text == "-") throw ParseError(t.line, t.column, "expected digits after '-'");
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc() || t.value < INT32_MIN || t.value > INT32_MAX)
        throw ParseError(t.line, t.column, "integer out of range: " + t.text);
      t.kind = Tok::Int;
      return t;
    }
    if (c == '"') {
      advance();
      const std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
      if (pos_ >= src_.size() || src_[pos_] != '"') throw ParseError(t.line, t.column, "unterminated string");
      t.text = std::string(src_.substr(start, pos_ - start));
      advance();
      t.kind = Tok::String;
      return t;
    }
    if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
      advance();
      advance();
      t.kind = Tok::Punct;
      t.text = "..";
      return t;
    }
    if (std::string_view(";,(){}[]").find(c) != std::string_view::npos) {
      advance();
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_{0};
  int line_{1};
  int col_{1};
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "\"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  Model parse() {
    for (;;) {
      if (is_ident("var")) {
        declaration();
      } else if (is_ident("constraint")) {
        constraint();
      } else if (is_ident("solve")) {
        solve();
        break;
      } else if (tok_.kind == Tok::End) {
        fail(tok_, "expected 'solve'");
      } else {
        fail(tok_, "expected 'var', 'constraint' or 'solve', found " + describe(tok_));
      }
    }
    if (tok_.kind != Tok::End) fail(tok_, "unexpected " + describe(tok_) + " after solve statement");
    return std::move(model_);
  }

 private:
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

  bool is_ident(std::string_view s) const { return tok_.kind == Tok::Ident && tok_.text == s; }
  bool is_punct(std::string_view s) const { return tok_.kind == Tok::Punct && tok_.text == s; }

  Token take() {
    Token t = std::move(tok_);
    tok_ = lex_.next();
    return t;
  }

  void expect(std::string_view punct) {
    if (!is_punct(punct)) fail(tok_, "expected '" + std::string(punct) + "', found " + describe(tok_));
    take();
  }

  Token ident() {
    if (tok_.kind != Tok::Ident) fail(tok_, "expected identifier, found " + describe(tok_));
    return take();
  }

  int integer() {
    if (tok_.kind != Tok::Int) fail(tok_, "expected integer, found " + describe(tok_));
    return static_cast<int>(take().value);
  }

  int variable() {
    const Token t = ident();
    const auto v = model_.find_var(t.text);
    if (!v) fail(t, "undeclared variable '" + t.text + "'");
    return *v;
  }

  template <class F>
  void list(F&& item) {
    expect("[");
    if (!is_punct("]")) {
      item();
      while (is_punct(",")) {
        take();
        item();
      }
    }
    expect("]");
  }

  void declaration() {
    take();
    const Token name = ident();
    if (model_.find_var(name.text)) fail(name, "variable '" + name.text + "' already declared");
    if (!is_ident("in")) fail(tok_, "expected 'in', found " + describe(tok_));
    take();
    std::vector<int> values;
    if (is_punct("{")) {
      take();
      values.push_back(integer());
      while (is_punct(",")) {
        take();
        values.push_back(integer());
      }
      expect("}");
    } else {
      const Token at = tok_;
      const long long lo = integer();
      expect("..");
      const long long hi = integer();
      if (lo > hi) fail(at, "empty domain " + std::to_string(lo) + ".." + std::to_string(hi));
      if (hi - lo >= (1LL << 24)) fail(at, "domain too large");
      for (long long v = lo; v <= hi; ++v) values.push_back(static_cast<int>(v));
    }
    expect(";");
    model_.add_var(name.text, std::move(values));
  }

  void constraint() {
    take();
    const Token call = ident();
    expect("(");
    ConstraintSpec c;
    const std::string& f = call.text;
    if (f == "eq" || f == "neq" || f == "leq") {
      const int x = variable();
      expect(",");
      const int y = variable();
      expect(",");
      const int k = integer();
      c = f == "eq" ? ConstraintSpec::eq(x, y, k) : f == "neq" ? ConstraintSpec::neq(x, y, k) : ConstraintSpec::leq(x, y, k);
    } else if (f == "linear") {
      std::vector<int> coeffs, vars;
      const Token at = tok_;
      list([&] {
        const Token t = tok_;
        const int a = integer();
        if (a == 0) fail(t, "zero coefficient");
        coeffs.push_back(a);
      });
      expect(",");
      list([&] { vars.push_back(variable()); });
      if (coeffs.size() != vars.size()) fail(at, "coefficient and variable lists differ in length");
      if (vars.empty()) fail(at, "empty linear constraint");
      expect(",");
      if (tok_.kind != Tok::String || (tok_.text != "<=" && tok_.text != "="))
        fail(tok_, "expected \"<=\" or \"=\", found " + describe(tok_));
      const bool eq = take().text == "=";
      expect(",");
      const int b = integer();
      c = eq ? ConstraintSpec::linear_eq(coeffs, vars, b) : ConstraintSpec::linear_leq(coeffs, vars, b);
    } else if (f == "alldifferent") {
      std::vector<int> vars;
      if (is_punct("[")) {
        list([&] { vars.push_back(variable()); });
      } else {
        vars.push_back(variable());
        while (is_punct(",")) {
          take();
          vars.push_back(variable());
        }
      }
      if (vars.size() < 2) fail(call, "alldifferent needs at least two variables");
      c = ConstraintSpec::alldifferent(std::move(vars));
    } else if (f == "forbid") {
      const int x = variable();
      expect(",");
      const int y = variable();
      expect(",");
      std::vector<int> as, bs;
      const Token at = tok_;
      list([&] { as.push_back(integer()); });
      expect(",");
      list([&] { bs.push_back(integer()); });
      if (as.size() != bs.size()) fail(at, "tuple lists differ in length");
      std::vector<std::pair<int, int>> tuples;
      for (std::size_t i = 0; i < as.size(); ++i) tuples.emplace_back(as[i], bs[i]);
      c = ConstraintSpec::forbidden(x, y, std::move(tuples));
    } else {
      fail(call, "unknown constraint '" + f + "'");
    }
    expect(")");
    expect(";");
    model_.constraints.push_back(std::move(c));
  }

  void solve() {
    take();
    if (is_ident("satisfy"))
      model_.goal = Goal::Satisfy;
    else if (is_ident("all"))
      model_.goal = Goal::All;
    else
      fail(tok_, "expected 'satisfy' or 'all', found " + describe(tok_));
    take();
    expect(";");
  }

  Lexer lex_;
  Token tok_;
  Model model_;
};

}  // namespace

Model parse_model(std::string_view text) { return Parser(text).parse(); }

std::string print_model(const Model& m) {
  std::ostringstream os;
  if (!m.name.empty()) os << "# " << m.name << '\n';
  for (const auto& v : m.vars) {
    os << "var " << v.name << " in ";
    const bool contiguous = v.values.back() - v.values.front() + 1 == static_cast<long long>(v.values.size());
    if (contiguous) {
      os << v.values.front() << ".." << v.values.back();
    } else {
      os << '{';
      for (std::size_t i = 0; i < v.values.size(); ++i) os << (i ? "," : "") << v.values[i];
      os << '}';
    }
    os << ";\n";
  }
  auto name = [&](int i) -> const std::string& { return m.vars[static_cast<std::size_t>(i)].name; };
  for (const auto& c : m.constraints) {
    os << "constraint ";
    switch (c.kind) {
      case ConstraintKind::EqOffset:
      case ConstraintKind::NeqOffset:
      case ConstraintKind::LeqOffset:
        os << (c.kind == ConstraintKind::EqOffset ? "eq" : c.kind == ConstraintKind::NeqOffset ? "neq" : "leq") << '('
           << name(c.vars[0]) << ',' << name(c.vars[1]) << ',' << c.constant << ')';
        break;
      case ConstraintKind::LinearLeq:
      case ConstraintKind::LinearEq:
        os << "linear([";
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) os << (i ? "," : "") << c.coeffs[i];
        os << "],[";
        for (std::size_t i = 0; i < c.vars.size(); ++i) os << (i ? "," : "") << name(c.vars[i]);
        os << "],\"" << (c.kind == ConstraintKind::LinearEq ? "=" : "<=") << "\"," << c.constant << ')';
        break;
      case ConstraintKind::AllDifferent:
        os << "alldifferent(";
        for (std::size_t i = 0; i < c.vars.size(); ++i) os << (i ? "," : "") << name(c.vars[i]);
        os << ')';
        break;
      case ConstraintKind::Forbidden:
        os << "forbid(" << name(c.vars[0]) << ',' << name(c.vars[1]) << ",[";
        for (std::size_t i = 0; i < c.tuples.size(); ++i) os << (i ? "," : "") << c.tuples[i].first;
        os << "],[";
        for (std::size_t i = 0; i < c.tuples.size(); ++i) os << (i ? "," : "") << c.tuples[i].second;
        os << "])";
        break;
    }
    os << ";\n";
  }
  os << "solve " << (m.goal == Goal::All ? "all" : "satisfy") << ";\n";
  return os.str();
}

}  // namespace eser
