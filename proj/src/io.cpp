#include "pnhs/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace pnhs {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// Splits a line into tokens; '(' ')' ':' are single-character tokens and
// "->" is one token. Everything after '#' is dropped.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ':') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", i + 1});
      i += 2;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '(' &&
           line[j] != ')' && line[j] != ':' && line[j] != '#' &&
           !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>'))
      ++j;
    out.push_back({std::string(line.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

class LineCursor {
public:
  LineCursor(std::vector<Token> tokens, std::size_t line, std::size_t line_length)
      : tokens_(std::move(tokens)), line_(line), end_column_(line_length + 1) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }
  std::size_t column() const { return done() ? end_column_ : tokens_[pos_].column; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

  void expect(const std::string& word) {
    if (done() || tokens_[pos_].text != word) fail("expected '" + word + "'");
    ++pos_;
  }

  std::string word() {
    if (done()) fail("unexpected end of line");
    return tokens_[pos_++].text;
  }

  value_t natural() {
    if (done()) fail("expected a natural number");
    const Token& t = tokens_[pos_];
    if (!is_number(t.text)) fail("expected a natural number, got '" + t.text + "'");
    if (t.text[0] == '-') fail("negative entry '" + t.text + "'");
    value_t v = 0;
    const char* b = t.text.data() + (t.text[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(b, t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail("number out of range '" + t.text + "'");
    ++pos_;
    return v;
  }

  Vector naturals_until(const std::string& stop) {
    Vector v;
    while (!done() && tokens_[pos_].text != stop) v.push_back(natural());
    return v;
  }

  std::size_t line() const { return line_; }

private:
  std::vector<Token> tokens_;
  std::size_t line_;
  std::size_t end_column_;
  std::size_t pos_ = 0;
};

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto tokens = tokenize(line);
    if (!tokens.empty()) f(LineCursor(std::move(tokens), line_no, line.size()));
    if (end == text.size()) break;
    start = end + 1;
  }
}

}  // namespace

PetriNet parse_net(std::string_view text) {
  std::optional<PetriNet> net;
  for_each_line(text, [&](LineCursor cur) {
    std::string kw = cur.word();
    if (kw == "dim") {
      if (net) throw ParseError(cur.line(), 1, "duplicate 'dim' declaration");
      std::size_t col = cur.column();
      value_t d = cur.natural();
      if (d < 1) throw ParseError(cur.line(), col, "dimension must be at least 1");
      if (!cur.done()) cur.fail("trailing input after dimension");
      net.emplace(static_cast<std::size_t>(d));
    } else if (kw == "action") {
      if (!net) throw ParseError(cur.line(), 1, "'action' before 'dim'");
      std::size_t name_col = cur.column();
      std::string name = cur.word();
      if (name == ":" || name == "->") throw ParseError(cur.line(), name_col, "missing action name");
      cur.expect(":");
      std::size_t pre_col = cur.column();
      Vector pre = cur.naturals_until("->");
      cur.expect("->");
      std::size_t post_col = cur.column();
      Vector post = cur.naturals_until("");
      if (pre.size() != net->dim())
        throw ParseError(cur.line(), pre_col,
                         "pre-vector arity " + std::to_string(pre.size()) + " != " +
                             std::to_string(net->dim()));
      if (post.size() != net->dim())
        throw ParseError(cur.line(), post_col,
                         "post-vector arity " + std::to_string(post.size()) + " != " +
                             std::to_string(net->dim()));
      if (net->find(name)) throw ParseError(cur.line(), name_col, "duplicate action name '" + name + "'");
      net->add_action(std::move(pre), std::move(post), std::move(name));
    } else {
      throw ParseError(cur.line(), 1, "unknown keyword '" + kw + "'");
    }
  });
  if (!net) throw ParseError(1, 1, "missing 'dim' declaration");
  return std::move(*net);
}

std::string format_net(const PetriNet& net) {
  std::ostringstream os;
  os << "dim " << net.dim() << '\n';
  for (const auto& a : net.actions()) {
    os << "action " << a.name << " :";
    for (value_t x : a.pre) os << ' ' << x;
    os << " ->";
    for (value_t x : a.post) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

SemilinearSet parse_semilinear(std::string_view text, std::optional<std::size_t> dim) {
  std::vector<LinearSet> comps;
  std::optional<std::size_t> n = dim;
  for_each_line(text, [&](LineCursor cur) {
    cur.expect("linear");
    cur.expect("base");
    std::size_t base_col = cur.column();
    Vector base = cur.naturals_until("periods");
    if (base.empty()) throw ParseError(cur.line(), base_col, "empty base vector");
    if (n && base.size() != *n)
      throw ParseError(cur.line(), base_col,
                       "base arity " + std::to_string(base.size()) + " != " + std::to_string(*n));
    n = base.size();
    std::vector<Vector> periods;
    if (!cur.done()) {
      cur.expect("periods");
      while (!cur.done()) {
        cur.expect("(");
        std::size_t col = cur.column();
        Vector p = cur.naturals_until(")");
        cur.expect(")");
        if (p.size() != *n)
          throw ParseError(cur.line(), col,
                           "period arity " + std::to_string(p.size()) + " != " + std::to_string(*n));
        periods.push_back(std::move(p));
      }
    }
    comps.emplace_back(std::move(base), std::move(periods));
  });
  if (!n) throw ParseError(1, 1, "empty set without a known dimension");
  return SemilinearSet(*n, std::move(comps));
}

std::string format_semilinear(const SemilinearSet& set) {
  std::ostringstream os;
  for (const auto& l : set.components()) {
    os << "linear base";
    for (value_t x : l.base()) os << ' ' << x;
    if (!l.periods().empty()) {
      os << " periods";
      for (const auto& p : l.periods()) {
        os << " (";
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
        os << ')';
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pnhs
