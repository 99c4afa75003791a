#include "hpx/parser.hpp"

#include <array>
#include <sstream>
#include <vector>

namespace hpx {

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(message) {}

namespace {

enum class Tok { lparen, rparen, symbol, keyword, negation, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

constexpr std::array<std::string_view, 9> kReserved = {"when", "and", "not", "oneof", "executable",
                                                       "weak", "strong", "define", "domain"};

bool is_reserved(std::string_view s) {
  for (auto r : kReserved) {
    if (r == s) return true;
  }
  return false;
}

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::vector<SourceSpan> open;
    while (true) {
      skip_space();
      const SourceSpan here{line_, col_};
      if (at_end()) {
        if (!open.empty()) {
          throw ParseError(ParseErrorKind::unbalanced_parentheses, open.back(), "unbalanced parentheses: '(' is never closed");
        }
        out.push_back({Tok::end, "", here});
        return out;
      }
      const char c = peek();
      if (c == '(') {
        advance();
        open.push_back(here);
        out.push_back({Tok::lparen, "(", here});
      } else if (c == ')') {
        if (open.empty()) {
          throw ParseError(ParseErrorKind::unbalanced_parentheses, here, "unbalanced parentheses: unexpected ')'");
        }
        open.pop_back();
        advance();
        out.push_back({Tok::rparen, ")", here});
      } else if (c == '-') {
        advance();
        if (at_end() || !ident_start(peek())) {
          throw ParseError(ParseErrorKind::lexical, here, "negation marker '-' must prefix a fluent name");
        }
        out.push_back({Tok::negation, "-", here});
      } else if (static_cast<unsigned char>(c) == 0xC2 && pos_ + 1 < src_.size() &&
                 static_cast<unsigned char>(src_[pos_ + 1]) == 0xAC) {
        pos_ += 2;
        ++col_;
        out.push_back({Tok::negation, "\xC2\xAC", here});
      } else if (c == ':') {
        advance();
        std::string word = ident();
        if (word.empty()) throw ParseError(ParseErrorKind::lexical, here, "expected keyword after ':'");
        out.push_back({Tok::keyword, ":" + word, here});
      } else if (ident_start(c)) {
        out.push_back({Tok::symbol, ident(), here});
      } else {
        std::string shown = (c >= 0x20 && c < 0x7f) ? std::string(1, c) : "\\x" + hex(c);
        throw ParseError(ParseErrorKind::lexical, here,
                         "unexpected character '" + shown + "' (names are [a-z][A-Za-z0-9_]*)");
      }
    }
  }

 private:
  static std::string hex(char c) {
    static constexpr char digits[] = "0123456789abcdef";
    const auto u = static_cast<unsigned char>(c);
    return {digits[u >> 4], digits[u & 15]};
  }
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }
  std::string ident() {
    std::string s;
    while (!at_end() && ident_char(peek())) {
      s.push_back(peek());
      advance();
    }
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PlanningDomain run() {
    if (at(Tok::lparen) && toks_[pos_ + 1].kind == Tok::symbol && toks_[pos_ + 1].text == "define") {
      next();
      next();
      expect(Tok::lparen, "'(domain NAME)'");
      const Token& kw = expect(Tok::symbol, "'domain'");
      if (kw.text != "domain") fail(ParseErrorKind::unknown_keyword, kw, "expected 'domain', found '" + kw.text + "'");
      d_.name = expect(Tok::symbol, "domain name").text;
      expect(Tok::rparen, "')'");
      while (!at(Tok::rparen)) item();
      next();
    } else {
      while (!at(Tok::end)) item();
    }
    expect(Tok::end, "end of input");
    return std::move(d_);
  }

 private:
  [[noreturn]] void fail(ParseErrorKind kind, const Token& t, const std::string& msg) {
    throw ParseError(kind, t.span, msg);
  }
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_symbol(std::string_view s) const { return at(Tok::symbol) && cur().text == s; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  const Token& peek_after_paren() const { return toks_[pos_ + 1 < toks_.size() ? pos_ + 1 : pos_]; }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) {
      fail(ParseErrorKind::unexpected_token, cur(),
           "expected " + what + ", found " + (at(Tok::end) ? std::string("end of input") : "'" + cur().text + "'"));
    }
    return next();
  }

  std::string name(const std::string& what) {
    const Token& t = expect(Tok::symbol, what);
    if (is_reserved(t.text)) fail(ParseErrorKind::unexpected_token, t, "'" + t.text + "' is reserved, expected " + what);
    return t.text;
  }

  void item() {
    expect(Tok::lparen, "'('");
    const Token& head = cur();
    if (head.kind == Tok::keyword && head.text == ":action") {
      next();
      action();
    } else if (head.kind == Tok::keyword && head.text == ":init") {
      next();
      init();
    } else if (head.kind == Tok::keyword && head.text == ":goal") {
      next();
      goal();
    } else if (head.kind == Tok::keyword && head.text == ":fluents") {
      next();
      while (!at(Tok::rparen)) d_.intern_fluent(name("fluent name"));
      next();
    } else if (head.kind == Tok::symbol && head.text == "oneof") {
      next();
      oneof_rest();
    } else {
      fail(ParseErrorKind::unknown_keyword, head, "unknown keyword '" + head.text + "'");
    }
  }

  Literal literal() {
    if (at(Tok::negation)) {
      next();
      return neg(d_.intern_fluent(name("fluent name")));
    }
    if (at(Tok::lparen)) {
      const Token& inner = peek_after_paren();
      if (inner.kind != Tok::symbol || inner.text != "not") {
        fail(ParseErrorKind::unexpected_token, inner, "expected literal, found '" + inner.text + "'");
      }
      next();
      next();
      Literal l = neg(d_.intern_fluent(name("fluent name")));
      expect(Tok::rparen, "')' closing (not ...)");
      return l;
    }
    return pos(d_.intern_fluent(name("fluent name")));
  }

  std::vector<Literal> condition() {
    std::vector<Literal> out;
    if (at(Tok::lparen) && peek_after_paren().kind == Tok::symbol && peek_after_paren().text == "and") {
      next();
      next();
      while (!at(Tok::rparen)) out.push_back(literal());
      next();
    } else {
      out.push_back(literal());
    }
    return out;
  }

  void add_effect(Action& a, std::vector<Literal> conds, Literal eff) {
    a.effects.push_back({effect_id(a.name, a.effects.size() + 1), eff, std::move(conds)});
  }

  void effect(Action& a) {
    if (at_symbol("when")) {
      next();
      auto conds = condition();
      add_effect(a, std::move(conds), literal());
      return;
    }
    if (at(Tok::lparen)) {
      const Token& inner = peek_after_paren();
      if (inner.kind == Tok::symbol && inner.text == "when") {
        next();
        next();
        auto conds = condition();
        add_effect(a, std::move(conds), literal());
        expect(Tok::rparen, "')' closing (when ...)");
        return;
      }
      if (inner.kind == Tok::symbol && inner.text == "and") {
        next();
        next();
        while (!at(Tok::rparen)) effect(a);
        next();
        return;
      }
    }
    add_effect(a, {}, literal());
  }

  void action() {
    const Token& name_tok = cur();
    Action a;
    a.name = name("action name");
    if (d_.find_action(a.name)) {
      fail(ParseErrorKind::duplicate_action, name_tok, "duplicate action name '" + a.name + "'");
    }
    while (!at(Tok::rparen)) {
      const Token& t = cur();
      if (t.kind == Tok::keyword && t.text == ":effect") {
        next();
        effect(a);
      } else if (t.kind == Tok::keyword && t.text == ":observe") {
        next();
        if (!a.observes.empty()) {
          fail(ParseErrorKind::multiple_observations, t, "action '" + a.name + "' may observe only one fluent");
        }
        a.observes.push_back({d_.intern_fluent(name("fluent name"))});
      } else if ((t.kind == Tok::keyword && t.text == ":executable") ||
                 (t.kind == Tok::symbol && t.text == "executable")) {
        next();
        for (auto l : condition()) a.executable.push_back(l);
      } else {
        fail(ParseErrorKind::unknown_keyword, t, "unknown action keyword '" + t.text + "'");
      }
    }
    next();
    d_.actions.push_back(std::move(a));
  }

  void oneof_rest() {
    OneofConstraint oc;
    while (!at(Tok::rparen)) oc.literals.push_back(literal());
    next();
    d_.oneofs.push_back(std::move(oc));
  }

  void init() {
    while (!at(Tok::rparen)) {
      if (at(Tok::lparen)) {
        const Token& inner = peek_after_paren();
        if (inner.kind == Tok::symbol && inner.text == "oneof") {
          next();
          next();
          oneof_rest();
          continue;
        }
        if (inner.kind == Tok::keyword && inner.text == ":static") {
          next();
          next();
          while (!at(Tok::rparen)) {
            Literal l = literal();
            d_.init.push_back(l);
            if (!d_.is_static(l.fluent)) d_.static_fluents.push_back(l.fluent);
          }
          next();
          continue;
        }
        if (inner.kind == Tok::keyword) {
          fail(ParseErrorKind::unknown_keyword, inner, "unknown keyword '" + inner.text + "' in :init");
        }
      }
      d_.init.push_back(literal());
    }
    next();
  }

  void goal() {
    GoalProposition g;
    if (at_symbol("weak")) {
      g.kind = GoalKind::weak;
      next();
    } else if (at_symbol("strong")) {
      g.kind = GoalKind::strong;
      next();
    }
    g.literals = condition();
    expect(Tok::rparen, "')' closing :goal");
    d_.goals.push_back(std::move(g));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  PlanningDomain d_;
};

void write_conjunction(std::ostream& os, const PlanningDomain& d, const std::vector<Literal>& ls) {
  if (ls.size() == 1) {
    os << d.literal_name(ls.front());
    return;
  }
  os << "(and";
  for (auto l : ls) os << ' ' << d.literal_name(l);
  os << ')';
}

}  // namespace

PlanningDomain parse_domain(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

std::string render_domain(const PlanningDomain& d) {
  std::ostringstream os;
  const bool wrapped = !d.name.empty();
  const std::string indent = wrapped ? "  " : "";
  if (wrapped) os << "(define (domain " << d.name << ")\n";
  if (!d.fluents.empty()) {
    os << indent << "(:fluents";
    for (const auto& f : d.fluents) os << ' ' << f;
    os << ")\n";
  }
  for (const auto& a : d.actions) {
    os << indent << "(:action " << a.name;
    if (!a.executable.empty()) {
      os << "\n" << indent << "  :executable ";
      write_conjunction(os, d, a.executable);
    }
    for (const auto& ep : a.effects) {
      os << "\n" << indent << "  :effect ";
      if (!ep.conditions.empty()) {
        os << "when ";
        write_conjunction(os, d, ep.conditions);
        os << ' ';
      }
      os << d.literal_name(ep.effect);
    }
    for (const auto& kp : a.observes) os << "\n" << indent << "  :observe " << d.fluents[kp.fluent];
    os << ")\n";
  }
  std::vector<Literal> plain;
  std::vector<Literal> statics;
  for (auto l : d.init) (d.is_static(l.fluent) ? statics : plain).push_back(l);
  if (!d.init.empty() || !d.oneofs.empty()) {
    os << indent << "(:init";
    for (auto l : plain) os << ' ' << d.literal_name(l);
    for (const auto& oc : d.oneofs) {
      os << " (oneof";
      for (auto l : oc.literals) os << ' ' << d.literal_name(l);
      os << ')';
    }
    if (!statics.empty()) {
      os << " (:static";
      for (auto l : statics) os << ' ' << d.literal_name(l);
      os << ')';
    }
    os << ")\n";
  }
  for (const auto& g : d.goals) {
    os << indent << "(:goal " << (g.kind == GoalKind::weak ? "weak " : "strong ");
    if (g.literals.empty()) {
      os << "(and)";
    } else {
      write_conjunction(os, d, g.literals);
    }
    os << ")\n";
  }
  if (wrapped) os << ")\n";
  return os.str();
}

}  // namespace hpx
