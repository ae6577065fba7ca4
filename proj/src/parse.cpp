#include "qf2/parse.hpp"

#include <cctype>

namespace qf2 {
namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind = End;
  std::string text;
};

struct Lexer {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Lexer(const std::string& s) {
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace((unsigned char)c)) {
        ++i;
        continue;
      }
      Token t;
      if (std::isalpha((unsigned char)c) || c == '_') {
        size_t j = i;
        while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
        t = {Token::Ident, s.substr(i, j - i)};
        i = j;
      } else if (std::isdigit((unsigned char)c)) {
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        t = {Token::Number, s.substr(i, j - i)};
        i = j;
      } else {
        t = {Token::Sym, std::string(1, c)};
        ++i;
      }
      toks.push_back(t);
    }
  }

  const Token& peek(int ahead = 0) const {
    static const Token end_tok{Token::End, ""};
    return pos + ahead < toks.size() ? toks[pos + ahead] : end_tok;
  }
  Token next() {
    Token t = peek();
    if (pos < toks.size()) ++pos;
    return t;
  }
  bool eat_sym(const std::string& s) {
    if (peek().kind == Token::Sym && peek().text == s) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_kw(const std::string& s) {
    if (peek().kind == Token::Ident && peek().text == s) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) throw ParseError("expected '" + s + "' near '" + peek().text + "'");
  }
};

bool is_keyword(const std::string& s) {
  return s == "pf" || s == "pure" || s == "perp" || s == "tensor";
}

struct ElemParser {
  const FieldTower& T;
  Lexer& lx;

  Fe name(const std::string& id) {
    int v = T.var_id(id);
    if (v >= 0) return T.var(v);
    for (int s = 0; s < T.depth(); ++s)
      if (T.sqrt_name(s) == id) return T.r_elem(s);
    throw ParseError("unknown element name '" + id + "'");
  }

  bool at_primary() const {
    const Token& t = lx.peek();
    if (t.kind == Token::Number) return true;
    if (t.kind == Token::Ident) return !is_keyword(t.text);
    return t.kind == Token::Sym && t.text == "(";
  }

  Fe primary() {
    if (lx.eat_sym("(")) {
      Fe e = expr();
      lx.expect_sym(")");
      return e;
    }
    Token t = lx.next();
    if (t.kind == Token::Number) {
      long n = std::stol(t.text);
      return (n % 2) ? Fe::one() : Fe::zero();
    }
    if (t.kind == Token::Ident && !is_keyword(t.text)) return name(t.text);
    throw ParseError("expected element near '" + t.text + "'");
  }

  Fe factor() {
    Fe e = primary();
    if (lx.eat_sym("^")) {
      Token t = lx.next();
      if (t.kind != Token::Number) throw ParseError("expected exponent");
      long n = std::stol(t.text);
      Fe r = Fe::one();
      for (long i = 0; i < n; ++i) r = T.mul(r, e);
      return r;
    }
    return e;
  }

  Fe term() {
    Fe e = factor();
    for (;;) {
      if (lx.peek().kind == Token::Sym && lx.peek().text == "*") {
        // stop before "* pf(...)", "* <...>": that '*' belongs to the form
        Lexer save = lx;
        lx.next();
        if (!at_primary()) {
          lx = save;
          break;
        }
        e = T.mul(e, factor());
      } else if (lx.eat_sym("/")) {
        e = T.div(e, factor());
      } else {
        break;
      }
    }
    return e;
  }

  Fe expr() {
    Fe e = term();
    while (lx.eat_sym("+")) e = T.add(e, term());
    return e;
  }
};

// Form AST, evaluated twice (quadratic / bilinear).
struct FormAst {
  enum Kind { Diag, Pf, PurePf, Perp, Tensor, Scale } kind;
  std::vector<Fe> elems;
  std::vector<FormAst> kids;
};

struct FormParser {
  const FieldTower& T;
  Lexer& lx;

  std::vector<Fe> elem_list(const std::string& close) {
    ElemParser ep{T, lx};
    std::vector<Fe> out;
    out.push_back(ep.expr());
    while (lx.eat_sym(",")) out.push_back(ep.expr());
    lx.expect_sym(close);
    return out;
  }

  FormAst atom() {
    if (lx.eat_sym("<")) return {FormAst::Diag, elem_list(">"), {}};
    if (lx.eat_kw("pf")) {
      lx.expect_sym("(");
      return {FormAst::Pf, elem_list(")"), {}};
    }
    if (lx.eat_kw("pure")) {
      if (!lx.eat_kw("pf")) throw ParseError("expected 'pf' after 'pure'");
      lx.expect_sym("(");
      return {FormAst::PurePf, elem_list(")"), {}};
    }
    if (lx.eat_sym("(")) {
      FormAst f = form();
      lx.expect_sym(")");
      return f;
    }
    throw ParseError("expected form near '" + lx.peek().text + "'");
  }

  FormAst scaled() {
    const Token& t = lx.peek();
    bool form_start = (t.kind == Token::Ident && (t.text == "pf" || t.text == "pure")) ||
                      (t.kind == Token::Sym && t.text == "<");
    if (!form_start && t.kind != Token::End) {
      // could be "c * atom" or "(form)": try the scalar reading first
      Lexer save = lx;
      try {
        ElemParser ep{T, lx};
        Fe c = ep.expr();
        lx.expect_sym("*");
        FormAst inner = atom();
        return {FormAst::Scale, {c}, {inner}};
      } catch (const ParseError&) {
        lx = save;
      }
    }
    return atom();
  }

  FormAst tform() {
    FormAst f = scaled();
    while (lx.eat_kw("tensor")) {
      FormAst g = scaled();
      f = {FormAst::Tensor, {}, {std::move(f), std::move(g)}};
    }
    return f;
  }

  FormAst form() {
    FormAst f = tform();
    while (lx.eat_kw("perp")) {
      FormAst g = tform();
      f = {FormAst::Perp, {}, {std::move(f), std::move(g)}};
    }
    return f;
  }
};

QForm eval_q(TowerPtr F, const FormAst& a) {
  switch (a.kind) {
    case FormAst::Diag:
      return QForm{F, a.elems};
    case FormAst::Pf:
      return pfister_qf(F, a.elems);
    case FormAst::PurePf:
      return pure_pfister_qf(F, a.elems);
    case FormAst::Perp:
      return perp(eval_q(F, a.kids[0]), eval_q(F, a.kids[1]));
    case FormAst::Tensor:
      return tensor(eval_q(F, a.kids[0]), eval_q(F, a.kids[1]));
    case FormAst::Scale:
      return scaled(*F, a.elems[0], eval_q(F, a.kids[0]));
  }
  throw ParseError("bad form ast");
}

BForm eval_b(TowerPtr F, const FormAst& a) {
  switch (a.kind) {
    case FormAst::Diag: {
      for (const Fe& e : a.elems)
        if (e.is_zero()) throw ParseError("bilinear diagonal entries must be nonzero");
      return BForm{F, a.elems, 0};
    }
    case FormAst::Pf:
      return pfister_b(F, a.elems);
    case FormAst::PurePf:
      return pure_pfister_b(F, a.elems);
    case FormAst::Perp:
      return perp_b(eval_b(F, a.kids[0]), eval_b(F, a.kids[1]));
    case FormAst::Tensor:
      return tensor_b(eval_b(F, a.kids[0]), eval_b(F, a.kids[1]));
    case FormAst::Scale:
      return scaled_b(*F, a.elems[0], eval_b(F, a.kids[0]));
  }
  throw ParseError("bad form ast");
}

void expect_done(const Lexer& lx) {
  if (lx.peek().kind != Token::End)
    throw ParseError("trailing input near '" + lx.peek().text + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::shared_ptr<FieldTower> parse_tower(const std::string& descriptor) {
  auto parts = split(descriptor, ';');
  if (parts.empty()) throw ParseError("empty field descriptor");
  auto T = std::make_shared<FieldTower>();

  int sqrt_count = 0;
  for (const auto& p : parts)
    if (trim(p).rfind("sqrt:", 0) == 0) ++sqrt_count;
  T->set_depth_limit(std::max(4, sqrt_count));

  std::string head = trim(parts[0]);
  if (head.rfind("F2(", 0) != 0 || head.back() != ')')
    throw ParseError("field descriptor must start with F2(...)");
  for (const auto& v : split(head.substr(3, head.size() - 4), ',')) {
    std::string name = trim(v);
    if (!name.empty()) T->add_var(name);
  }

  for (size_t i = 1; i < parts.size(); ++i) {
    std::string p = trim(parts[i]);
    if (p.empty()) continue;
    if (p.rfind("sqrt:", 0) == 0) {
      T->add_sqrt(parse_elem(*T, p.substr(5)));
      continue;
    }
    size_t c = p.find(':');
    if (c == std::string::npos || trim(p.substr(c + 1)) != "trans")
      throw ParseError("bad descriptor segment '" + p + "'");
    T->add_var(trim(p.substr(0, c)));
  }
  return T;
}

Fe parse_elem(const FieldTower& T, const std::string& s) {
  Lexer lx(s);
  ElemParser ep{T, lx};
  Fe e = ep.expr();
  expect_done(lx);
  return e;
}

std::vector<Fe> parse_elem_list(const FieldTower& T, const std::string& s) {
  Lexer lx(s);
  ElemParser ep{T, lx};
  std::vector<Fe> out;
  out.push_back(ep.expr());
  while (lx.eat_sym(",")) out.push_back(ep.expr());
  expect_done(lx);
  return out;
}

QForm parse_qform(TowerPtr F, const std::string& s) {
  Lexer lx(s);
  FormParser fp{*F, lx};
  FormAst a = fp.form();
  expect_done(lx);
  return eval_q(F, a);
}

BForm parse_bform(TowerPtr F, const std::string& s) {
  Lexer lx(s);
  FormParser fp{*F, lx};
  FormAst a = fp.form();
  expect_done(lx);
  return eval_b(F, a);
}

}  // namespace qf2
