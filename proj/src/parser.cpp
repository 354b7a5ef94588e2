#include "temporalis/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace temporalis {

namespace {

enum class Tok {
  End,
  Ident,    // predicates, constants, variables
  Number,   // integer literal (no sign)
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  At,
  Dot,
  Arrow,    // :-
  Minus,
  KwNot,
  KwTop,
  KwBottom,
  KwInf,
  KwBoxMinus,
  KwBoxPlus,
  KwDiamondMinus,
  KwDiamondPlus,
  KwSince,
  KwUntil,
};

const char *tok_name(Tok t) {
  switch (t) {
  case Tok::End: return "end of input";
  case Tok::Ident: return "identifier";
  case Tok::Number: return "integer";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBracket: return "'['";
  case Tok::RBracket: return "']'";
  case Tok::Comma: return "','";
  case Tok::At: return "'@'";
  case Tok::Dot: return "'.'";
  case Tok::Arrow: return "':-'";
  case Tok::Minus: return "'-'";
  case Tok::KwNot: return "'not'";
  case Tok::KwTop: return "'TOP'";
  case Tok::KwBottom: return "'BOTTOM'";
  case Tok::KwInf: return "'inf'";
  case Tok::KwBoxMinus: return "'BOXMINUS'";
  case Tok::KwBoxPlus: return "'BOXPLUS'";
  case Tok::KwDiamondMinus: return "'DIAMONDMINUS'";
  case Tok::KwDiamondPlus: return "'DIAMONDPLUS'";
  case Tok::KwSince: return "'SINCE'";
  case Tok::KwUntil: return "'UNTIL'";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Time value = 0;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token &peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_trivia();
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      lex_ident();
      return;
    }
    switch (c) {
    case '(': single(Tok::LParen); return;
    case ')': single(Tok::RParen); return;
    case '[': single(Tok::LBracket); return;
    case ']': single(Tok::RBracket); return;
    case ',': single(Tok::Comma); return;
    case '@': single(Tok::At); return;
    case '.': single(Tok::Dot); return;
    case '-': single(Tok::Minus); return;
    case ':':
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        current_.kind = Tok::Arrow;
        current_.text = ":-";
        bump();
        bump();
        return;
      }
      throw ParseError("unexpected ':'", line_, col_);
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", line_,
                       col_);
    }
  }

  void single(Tok k) {
    current_.kind = k;
    current_.text = text_[pos_];
    bump();
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      bump();
    // "0.5": a dot followed by a digit is a fractional literal, which the
    // integer timeline rejects (rational-timeline reasoning is undecidable).
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
      throw ParseError(
          "non-integer number: the rational timeline is not supported "
          "(reasoning over it is undecidable); use integer endpoints",
          current_.line, current_.col);
    current_.kind = Tok::Number;
    current_.text = std::string(text_.substr(start, pos_ - start));
    current_.value = std::strtoll(current_.text.c_str(), nullptr, 10);
  }

  void lex_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      bump();
    current_.text = std::string(text_.substr(start, pos_ - start));
    // the punctual shorthand glues a number to an operator keyword:
    // "DIAMONDMINUS1 P" means DIAMONDMINUS[1,1] P
    for (const char *kw : {"BOXMINUS", "BOXPLUS", "DIAMONDMINUS",
                           "DIAMONDPLUS", "SINCE", "UNTIL"}) {
      std::size_t n = std::string(kw).size();
      if (current_.text.size() > n && current_.text.compare(0, n, kw) == 0 &&
          std::all_of(current_.text.begin() +
                          static_cast<std::ptrdiff_t>(n),
                      current_.text.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                      })) {
        std::size_t back = current_.text.size() - n;
        pos_ -= back;
        col_ -= back;
        current_.text.resize(n);
        break;
      }
    }
    if (current_.text == "not")
      current_.kind = Tok::KwNot;
    else if (current_.text == "TOP")
      current_.kind = Tok::KwTop;
    else if (current_.text == "BOTTOM")
      current_.kind = Tok::KwBottom;
    else if (current_.text == "inf")
      current_.kind = Tok::KwInf;
    else if (current_.text == "BOXMINUS")
      current_.kind = Tok::KwBoxMinus;
    else if (current_.text == "BOXPLUS")
      current_.kind = Tok::KwBoxPlus;
    else if (current_.text == "DIAMONDMINUS")
      current_.kind = Tok::KwDiamondMinus;
    else if (current_.text == "DIAMONDPLUS")
      current_.kind = Tok::KwDiamondPlus;
    else if (current_.text == "SINCE")
      current_.kind = Tok::KwSince;
    else if (current_.text == "UNTIL")
      current_.kind = Tok::KwUntil;
    else
      current_.kind = Tok::Ident;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Program parse_program() {
    std::vector<Rule> rules;
    while (lex_.peek().kind != Tok::End)
      rules.push_back(parse_rule());
    return Program(std::move(rules));
  }

  Dataset parse_dataset() {
    std::vector<Fact> facts;
    while (lex_.peek().kind != Tok::End) {
      facts.push_back(parse_fact_body());
      expect(Tok::Dot);
    }
    return Dataset(std::move(facts));
  }

  Fact parse_single_fact() {
    Fact f = parse_fact_body();
    expect(Tok::End);
    return f;
  }

  std::pair<AtomPtr, Interval> parse_single_metric_fact() {
    AtomPtr atom = parse_atom();
    expect(Tok::At);
    Interval rho = parse_interval_or_point();
    expect(Tok::End);
    return {atom, rho};
  }

private:
  Token expect(Tok kind) {
    if (lex_.peek().kind != kind)
      throw ParseError(std::string("expected ") + tok_name(kind) +
                           ", found " + tok_name(lex_.peek().kind),
                       lex_.peek().line, lex_.peek().col);
    return lex_.take();
  }

  bool accept(Tok kind) {
    if (lex_.peek().kind != kind)
      return false;
    lex_.take();
    return true;
  }

  Rule parse_rule() {
    Rule r;
    r.head = parse_atom();
    if (accept(Tok::Arrow)) {
      while (true) {
        if (accept(Tok::KwNot))
          r.negative.push_back(parse_atom());
        else
          r.positive.push_back(parse_atom());
        if (!accept(Tok::Comma))
          break;
      }
    }
    expect(Tok::Dot);
    return r;
  }

  Fact parse_fact_body() {
    Token head = lex_.peek();
    AtomPtr atom = parse_relational();
    if (!atom->is_ground())
      throw ParseError("facts must be ground", head.line, head.col);
    expect(Tok::At);
    Interval rho = parse_interval_or_point();
    Fact f;
    f.atom = atom->ground_atom();
    f.rho = rho;
    return f;
  }

  AtomPtr parse_atom() {
    AtomPtr lhs = parse_primary();
    Tok k = lex_.peek().kind;
    if (k == Tok::KwSince || k == Tok::KwUntil) {
      lex_.take();
      Interval rho = parse_operator_interval();
      AtomPtr rhs = parse_primary();
      return MetricAtom::binary(
          k == Tok::KwSince ? AtomKind::Since : AtomKind::Until, rho,
          std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  AtomPtr parse_primary() {
    const Token &t = lex_.peek();
    switch (t.kind) {
    case Tok::LParen: {
      lex_.take();
      AtomPtr a = parse_atom();
      expect(Tok::RParen);
      return a;
    }
    case Tok::KwTop:
      lex_.take();
      return MetricAtom::top();
    case Tok::KwBottom:
      lex_.take();
      return MetricAtom::bottom();
    case Tok::KwBoxMinus:
    case Tok::KwBoxPlus:
    case Tok::KwDiamondMinus:
    case Tok::KwDiamondPlus: {
      Tok op = lex_.take().kind;
      Interval rho = parse_operator_interval();
      AtomPtr operand = parse_primary();
      AtomKind kind = op == Tok::KwBoxMinus    ? AtomKind::BoxMinus
                      : op == Tok::KwBoxPlus   ? AtomKind::BoxPlus
                      : op == Tok::KwDiamondMinus ? AtomKind::DiamondMinus
                                                  : AtomKind::DiamondPlus;
      return MetricAtom::unary(kind, rho, std::move(operand));
    }
    case Tok::Ident:
      return parse_relational();
    default:
      throw ParseError(std::string("expected a metric atom, found ") +
                           tok_name(t.kind),
                       t.line, t.col);
    }
  }

  AtomPtr parse_relational() {
    Token name = expect(Tok::Ident);
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      while (true) {
        args.push_back(parse_term());
        if (!accept(Tok::Comma))
          break;
      }
      expect(Tok::RParen);
    }
    return MetricAtom::rel(name.text, std::move(args));
  }

  Term parse_term() {
    const Token &t = lex_.peek();
    if (t.kind == Tok::Ident) {
      Token tok = lex_.take();
      bool is_var = std::isupper(static_cast<unsigned char>(tok.text[0])) ||
                    tok.text[0] == '_';
      return Term{is_var, tok.text};
    }
    if (t.kind == Tok::Number) {
      Token tok = lex_.take();
      return Term{false, tok.text};
    }
    throw ParseError(std::string("expected a term, found ") + tok_name(t.kind),
                     t.line, t.col);
  }

  // Interval after an operator keyword; a bare integer t means [t,t].
  Interval parse_operator_interval() {
    Interval rho = parse_interval_or_point();
    if (!rho.nonnegative())
      throw ParseError("operator interval " + rho.to_string() +
                           " must be non-negative",
                       lex_.peek().line, lex_.peek().col);
    return rho;
  }

  Interval parse_interval_or_point() {
    const Token &t = lex_.peek();
    if (t.kind == Tok::Number || t.kind == Tok::Minus) {
      Time v = parse_endpoint();
      return Interval::point(v);
    }
    bool lo_closed;
    if (accept(Tok::LBracket))
      lo_closed = true;
    else if (accept(Tok::LParen))
      lo_closed = false;
    else
      throw ParseError(std::string("expected an interval, found ") +
                           tok_name(t.kind),
                       t.line, t.col);
    Token at = lex_.peek();
    Time lo = parse_endpoint();
    expect(Tok::Comma);
    Time hi = parse_endpoint();
    bool hi_closed;
    if (accept(Tok::RBracket))
      hi_closed = true;
    else if (accept(Tok::RParen))
      hi_closed = false;
    else
      throw ParseError(std::string("expected ']' or ')', found ") +
                           tok_name(lex_.peek().kind),
                       lex_.peek().line, lex_.peek().col);
    if (lo == kNegInf && lo_closed)
      throw ParseError("'[' cannot be used with -inf", at.line, at.col);
    if (hi == kPosInf && hi_closed)
      throw ParseError("']' cannot be used with inf", at.line, at.col);
    auto rho = Interval::try_make(lo, lo_closed, hi, hi_closed);
    if (!rho)
      throw ParseError("empty interval: no integer lies in " +
                           std::string(lo_closed ? "[" : "(") +
                           time_to_string(lo) + "," + time_to_string(hi) +
                           std::string(hi_closed ? "]" : ")"),
                       at.line, at.col);
    return *rho;
  }

  Time parse_endpoint() {
    bool neg = accept(Tok::Minus);
    const Token &t = lex_.peek();
    if (t.kind == Tok::KwInf) {
      lex_.take();
      return neg ? kNegInf : kPosInf;
    }
    if (t.kind == Tok::Number) {
      Token tok = lex_.take();
      return neg ? -tok.value : tok.value;
    }
    throw ParseError(std::string("expected an integer or 'inf', found ") +
                         tok_name(t.kind),
                     t.line, t.col);
  }

  Lexer lex_;
};

} // namespace

Program parse_program(std::string_view text) {
  return Parser(text).parse_program();
}

Dataset parse_dataset(std::string_view text) {
  return Parser(text).parse_dataset();
}

Fact parse_fact(std::string_view text) {
  return Parser(text).parse_single_fact();
}

std::pair<AtomPtr, Interval> parse_metric_fact(std::string_view text) {
  return Parser(text).parse_single_metric_fact();
}

} // namespace temporalis
